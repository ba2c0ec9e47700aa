//! Exact evaluation of the automorphism-order bounds.
//!
//! For a k-web of degree `d` on `P^N` the bound is `(d+2k)^((N+1)²-1)`.
//! For a foliation with ample canonical bundle on a surface, with
//! `m = (K_F·K_X + 4K_F² + 1)² + 3K_F²`, the pluricanonical model lives in
//! `P^{N_cap}` with `N_cap = m²K_F² + 1`, and the web bound applied there
//! gives `((3m²+2m)K_F²)^((m²K_F²+2)²-1)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::Rational;

/// Powers with more estimated digits than this are not materialized.
pub const MATERIALIZE_DIGIT_LIMIT: u64 = 3_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("K_F² must be positive, got {0}")]
    NonPositiveKf2(BigInt),
    #[error("exponent too large to evaluate: {0}")]
    TooLarge(String),
    #[error("characteristic numbers: expected {expected} values, got {found}")]
    Length { expected: usize, found: usize },
}

impl BoundsError {
    pub fn name(&self) -> &'static str {
        match self {
            BoundsError::Domain(_) => "domain",
            BoundsError::NonPositiveKf2(_) => "kf2_not_positive",
            BoundsError::TooLarge(_) => "too_large",
            BoundsError::Length { .. } => "length",
        }
    }
}

/// `(d+2k)^((N+1)²-1)`; needs `k ≥ 1` and `N ≥ 2`.
pub fn web_aut_bound(d: u32, k: u32, n: u32) -> Result<BigUint, BoundsError> {
    if k == 0 {
        return Err(BoundsError::Domain("k must be at least 1".into()));
    }
    if n < 2 {
        return Err(BoundsError::Domain(format!("N must be at least 2, got {n}")));
    }
    let base = BigUint::from(d) + BigUint::from(2 * k as u64);
    let e = (n as u64 + 1).pow(2) - 1;
    let e = u32::try_from(e).map_err(|_| BoundsError::TooLarge(format!("(N+1)²-1 = {e}")))?;
    Ok(base.pow(e))
}

fn require_positive(kf2: &BigInt) -> Result<(), BoundsError> {
    if kf2.is_positive() {
        Ok(())
    } else {
        Err(BoundsError::NonPositiveKf2(kf2.clone()))
    }
}

fn to_biguint(x: BigInt) -> BigUint {
    x.to_biguint().expect("non-negative by construction")
}

/// `m = (KFKX + 4·KF2 + 1)² + 3·KF2`.
pub fn theorem_m(kf2: &BigInt, kfkx: &BigInt) -> Result<BigUint, BoundsError> {
    require_positive(kf2)?;
    let s: BigInt = kfkx + kf2 * 4 + 1;
    Ok(to_biguint(&s * &s + kf2 * 3))
}

/// The very-ampleness threshold and the least integer strictly above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub k0: Rational,
    pub least_m: BigInt,
}

/// `k0 = ((LKX + 4·L2 + 1)² / L2 + 3) / 2`.
pub fn matsusaka_k0(l2: &BigInt, lkx: &BigInt) -> Result<Threshold, BoundsError> {
    require_positive(l2)?;
    let s: BigInt = lkx + l2 * 4 + 1;
    let k0 = (Rational::new(&s * &s, l2.clone()) + Rational::from_integer(3.into()))
        / Rational::from_integer(2.into());
    let least_m = k0.floor().to_integer() + 1;
    Ok(Threshold { k0, least_m })
}

fn require_m(m: &BigUint) -> Result<(), BoundsError> {
    if m.is_zero() {
        Err(BoundsError::Domain("m must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `m²·KF2 + 2`, bounding `h⁰(K_F^{⊗m})`.
pub fn h0_bound(m: &BigUint, kf2: &BigInt) -> Result<BigUint, BoundsError> {
    require_m(m)?;
    require_positive(kf2)?;
    Ok(m * m * to_biguint(kf2.clone()) + 2u32)
}

/// `(d_{N-2}, d_{N-1}) = (m²·KF2, (m²+m)·KF2)`.
pub fn tangency_numbers(m: &BigUint, kf2: &BigInt) -> Result<(BigUint, BigUint), BoundsError> {
    require_m(m)?;
    require_positive(kf2)?;
    let kf2 = to_biguint(kf2.clone());
    let m2 = m * m;
    Ok((&m2 * &kf2, (&m2 + m) * &kf2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "as_string")]
    pub kf2: BigInt,
    #[serde(serialize_with = "as_string")]
    pub kfkx: BigInt,
    #[serde(serialize_with = "as_string")]
    pub m: BigUint,
    #[serde(serialize_with = "as_string")]
    pub k0: Rational,
    /// Cap on `h⁰(K_F^{⊗m})`, not its value.
    #[serde(serialize_with = "as_string")]
    pub h0_cap: BigUint,
    /// Cap on the embedding dimension, `h0_cap - 1`.
    #[serde(rename = "N_cap", serialize_with = "as_string")]
    pub n_cap: BigUint,
    #[serde(rename = "dN2", serialize_with = "as_string")]
    pub dn2: BigUint,
    #[serde(rename = "dN1", serialize_with = "as_string")]
    pub dn1: BigUint,
    /// `dN2 + 2·dN1 = (3m²+2m)·KF2`.
    #[serde(serialize_with = "as_string")]
    pub base: BigUint,
    /// `h0_cap² - 1`.
    #[serde(serialize_with = "as_string")]
    pub exponent: BigUint,
    /// Decimal length of `base^exponent`, when it could be certified.
    pub digit_count: Option<u64>,
}

fn as_string<T: ToString, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Composes the threshold `m`, the section bound and the tangency numbers
/// into the web bound on the pluricanonical model.
pub fn main_bound(kf2: &BigInt, kfkx: &BigInt) -> Result<BoundReport, BoundsError> {
    let m = theorem_m(kf2, kfkx)?;
    let k0 = matsusaka_k0(kf2, kfkx)?.k0;
    let h0_cap = h0_bound(&m, kf2)?;
    let n_cap = &h0_cap - 1u32;
    let (dn2, dn1) = tangency_numbers(&m, kf2)?;
    let base = &dn2 + &dn1 * 2u32;
    debug_assert_eq!(base, (&m * &m * 3u32 + &m * 2u32) * to_biguint(kf2.clone()));
    let exponent = &h0_cap * &h0_cap - 1u32;
    let digit_count = digit_count_of_power(&base, &exponent);
    Ok(BoundReport { kf2: kf2.clone(), kfkx: kfkx.clone(), m, k0, h0_cap, n_cap, dn2, dn1, base, exponent, digit_count })
}

impl BoundReport {
    /// `base^exponent`, unless it has more than [`MATERIALIZE_DIGIT_LIMIT`] digits.
    pub fn final_bound(&self) -> Option<BigUint> {
        power_if_small(&self.base, &self.exponent)
    }
}

fn log10_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").log10();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn estimated_digits(base: &BigUint, exponent: &BigUint) -> f64 {
    exponent.to_f64().unwrap_or(f64::INFINITY) * log10_biguint(base)
}

fn power_if_small(base: &BigUint, exponent: &BigUint) -> Option<BigUint> {
    if estimated_digits(base, exponent) > MATERIALIZE_DIGIT_LIMIT as f64 {
        return None;
    }
    Some(base.pow(exponent.to_u32()?))
}

/// `⌊exponent · log10(base)⌋ + 1` for `base ≥ 2`.
///
/// Taken from a floating-point estimate when it is far enough from an
/// integer to be certain, else by comparing the exact power with a power of ten.
pub fn digit_count_of_power(base: &BigUint, exponent: &BigUint) -> Option<u64> {
    if exponent.is_zero() || base.is_one() {
        return Some(1);
    }
    let est = estimated_digits(base, exponent);
    if !est.is_finite() || est > 1e17 {
        return None;
    }
    // relative error of the product and of log10 is a few ulps; be generous
    let err = est * 1e-13 + 1e-9;
    let floor = est.floor();
    if est - floor > err && floor + 1.0 - est > err {
        return Some(floor as u64 + 1);
    }
    let value = power_if_small(base, exponent)?;
    let mut digits = (floor as u64).saturating_sub(1);
    let mut ten = BigUint::from(10u32).pow(digits as u32);
    while ten <= value {
        ten *= 10u32;
        digits += 1;
    }
    Some(digits)
}

/// Characteristic numbers `d_0, ..., d_{N-1}` of a web on `P^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharNumbers {
    n: usize,
    values: Vec<BigUint>,
}

impl CharNumbers {
    pub fn new(n: usize, values: Vec<BigUint>) -> Result<Self, BoundsError> {
        if values.len() != n {
            return Err(BoundsError::Length { expected: n, found: values.len() });
        }
        Ok(CharNumbers { n, values })
    }

    /// `[k, d]` for a k-web of degree `d` on the plane.
    pub fn plane_web(k: u32, d: u32) -> Self {
        CharNumbers { n: 2, values: vec![k.into(), d.into()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// `d_i ↦ d_{N-1-i}`: characteristic numbers of the dual web.
pub fn duality_transform(c: &CharNumbers) -> CharNumbers {
    CharNumbers { n: c.n, values: c.values.iter().rev().cloned().collect() }
}

/// Parses a decimal integer, allowing a sign.
pub fn parse_int(s: &str) -> Result<BigInt, BoundsError> {
    BigInt::parse_bytes(s.trim().as_bytes(), 10)
        .ok_or_else(|| BoundsError::Domain(format!("'{s}' is not an integer")))
}
