//! Plane foliations near the origin of an affine chart, `ω = a dx + b dy`.
//!
//! The dual vector field is `v = b ∂/∂x - a ∂/∂y`; its linear part at the
//! origin decides reducedness. A blow-up of the origin is described by its
//! two standard charts, `y = t x` and `x = s y`, with exceptional divisor
//! `E = {x = 0}` in the first and `E = {y = 0}` in the second.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{gcd, parse_polynomial, AlgError, Monomial, Polynomial};
use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("malformed local foliation: {0}")]
    Shape(String),
    #[error("the zero form defines no foliation")]
    ZeroForm,
    #[error("a and b share the common factor {0}; saturate first")]
    CommonFactor(String),
    #[error("intersection numbers overflow")]
    Overflow,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl LocalError {
    pub fn name(&self) -> &'static str {
        match self {
            LocalError::Shape(_) => "malformed_local",
            LocalError::ZeroForm => "zero_form",
            LocalError::CommonFactor(_) => "common_factor",
            LocalError::Overflow => "overflow",
            LocalError::Alg(_) => "algebra",
        }
    }
}

/// `a(x, y) dx + b(x, y) dy`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalFoliation<F> {
    a: Polynomial<F>,
    b: Polynomial<F>,
}

impl<F: Field> LocalFoliation<F> {
    /// Requires two-variable coefficients, not both zero, without a common factor.
    pub fn new(a: Polynomial<F>, b: Polynomial<F>) -> Result<Self, LocalError> {
        let f = Self::raw(a, b)?;
        if f.a.is_zero() && f.b.is_zero() {
            return Err(LocalError::ZeroForm);
        }
        let g = gcd(&f.a, &f.b);
        if !g.is_constant() {
            return Err(LocalError::CommonFactor(g.to_string()));
        }
        Ok(f)
    }

    fn raw(a: Polynomial<F>, b: Polynomial<F>) -> Result<Self, LocalError> {
        if a.nvars() != 2 || b.nvars() != 2 {
            return Err(LocalError::Shape("coefficients must be polynomials in two variables".into()));
        }
        Ok(LocalFoliation { a, b })
    }

    /// Parses `"y*dx + x*dy"` style input in the variables `x, y`.
    pub fn parse(text: &str) -> Result<Self, LocalError> {
        let poly = parse_polynomial::<F>(text, &["x", "y", "dx", "dy"])?;
        let mut a = Polynomial::zero(2);
        let mut b = Polynomial::zero(2);
        for (m, c) in poly.terms() {
            let e = m.exponents();
            let target = match (e[2], e[3]) {
                (1, 0) => &mut a,
                (0, 1) => &mut b,
                _ => return Err(LocalError::Shape(format!("'{text}' is not linear in dx, dy"))),
            };
            *target = &*target + &Polynomial::monomial(Monomial::new(e[..2].to_vec()), c.clone());
        }
        Self::new(a, b)
    }

    pub fn a(&self) -> &Polynomial<F> {
        &self.a
    }

    pub fn b(&self) -> &Polynomial<F> {
        &self.b
    }

    /// Algebraic multiplicity at the origin: least total degree of a term of `a` or `b`.
    pub fn multiplicity(&self) -> u32 {
        self.a.min_degree().into_iter().chain(self.b.min_degree()).min().unwrap_or(0)
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.a.constant_term().is_zero() && self.b.constant_term().is_zero()
    }

    /// Jacobian at the origin of `v = b ∂x - a ∂y`.
    pub fn linear_part(&self) -> [[F; 2]; 2] {
        let lin = |p: &Polynomial<F>, var: usize| p.coefficient(&Monomial::var(2, var));
        [
            [lin(&self.b, 0), lin(&self.b, 1)],
            [-lin(&self.a, 0), -lin(&self.a, 1)],
        ]
    }

    pub fn to_string_with(&self, names: [&str; 2]) -> String {
        let mut parts = Vec::new();
        for (p, v) in [(&self.a, names[0]), (&self.b, names[1])] {
            if p.is_zero() {
                continue;
            }
            let body = p.to_string_with(&names);
            parts.push(match body.as_str() {
                "1" => format!("d{v}"),
                "-1" => format!("-d{v}"),
                _ if p.num_terms() == 1 => format!("{body}*d{v}"),
                _ => format!("({body})*d{v}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for LocalFoliation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(["x", "y"]))
    }
}

impl<F: Field> fmt::Debug for LocalFoliation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalFoliation({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonReducedReason<F> {
    BothEigenvaluesZero,
    /// An eigenvalue quotient; the larger of `λ1/λ2` and `λ2/λ1`.
    PositiveRationalQuotient(F),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducedness<F> {
    Reduced,
    NonReduced(NonReducedReason<F>),
}

impl<F: Field> fmt::Display for NonReducedReason<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonReducedReason::BothEigenvaluesZero => f.write_str("both eigenvalues zero"),
            NonReducedReason::PositiveRationalQuotient(q) => write!(f, "positive rational quotient {q}"),
        }
    }
}

/// Reducedness of a singularity with linear part `m`: eigenvalues not both
/// zero, and their quotient, when defined, not a positive rational.
///
/// With trace `b` and determinant `c ≠ 0`, the quotient `r = λ1/λ2` is a root
/// of `c u² - (b² - 2c) u + c`, whose discriminant is `b²(b² - 4c)`.
pub fn reduced_check<F: Field>(m: &[[F; 2]; 2]) -> Reducedness<F> {
    let b = m[0][0].clone() + m[1][1].clone();
    let c = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    if c.is_zero() {
        return if b.is_zero() {
            Reducedness::NonReduced(NonReducedReason::BothEigenvaluesZero)
        } else {
            Reducedness::Reduced
        };
    }
    let two = F::from_i64(2);
    let mid = b.clone() * b.clone() - two.clone() * c.clone();
    let disc = mid.clone() * mid.clone() - F::from_i64(4) * c.clone() * c.clone();
    let Some(root) = disc.sqrt_exact() else {
        return Reducedness::Reduced;
    };
    let u1 = (mid.clone() + root.clone()) / (two.clone() * c.clone());
    let u2 = (mid - root) / (two * c);
    let u = if u1 > u2 { u1 } else { u2 };
    if u.is_positive() {
        Reducedness::NonReduced(NonReducedReason::PositiveRationalQuotient(u))
    } else {
        Reducedness::Reduced
    }
}

/// One blow-up of the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct BlowupResult<F> {
    /// Saturated form in `(x, t)`, `y = t x`.
    pub chart1: LocalFoliation<F>,
    /// Saturated form in `(s, y)`, `x = s y`.
    pub chart2: LocalFoliation<F>,
    /// Vanishing order of the pulled-back form along `E`.
    pub l: u32,
    /// `E` is not invariant.
    pub dicritical: bool,
}

/// Blows up the origin.
///
/// In chart 1, `π*ω = (a + t b) dx + x b dt` evaluated at `(x, t x)`; in
/// chart 2, `π*ω = y a ds + (s a + b) dy` at `(s y, y)`. `l` is the largest
/// power of the divisor dividing both coefficients. `E = {x = 0}` is
/// invariant iff the saturated `dt` coefficient vanishes on it.
pub fn blowup_point<F: Field>(f: &LocalFoliation<F>) -> Result<BlowupResult<F>, LocalError> {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let chart1_images = [x.clone(), &y * &x];
    let a1 = f.a.substitute(&chart1_images)?;
    let b1 = f.b.substitute(&chart1_images)?;
    let p1 = &a1 + &(&y * &b1);
    let q1 = &x * &b1;
    let chart2_images = [&x * &y, y.clone()];
    let a2 = f.a.substitute(&chart2_images)?;
    let b2 = f.b.substitute(&chart2_images)?;
    let p2 = &y * &a2;
    let q2 = &(&x * &a2) + &b2;

    let order = |p: &Polynomial<F>, q: &Polynomial<F>, var: usize| {
        p.valuation_in(var).into_iter().chain(q.valuation_in(var)).min().ok_or(LocalError::ZeroForm)
    };
    let l = order(&p1, &q1, 0)?;
    debug_assert_eq!(order(&p2, &q2, 1)?, l);
    let divide = |p: &Polynomial<F>, var| p.div_var_power(var, l).expect("l divides both coefficients");
    let chart1 = LocalFoliation::raw(divide(&p1, 0), divide(&q1, 0))?;
    let chart2 = LocalFoliation::raw(divide(&p2, 1), divide(&q2, 1))?;
    let dicritical = chart1.b.valuation_in(0) == Some(0);
    Ok(BlowupResult { chart1, chart2, l, dicritical })
}

impl<F: Field> fmt::Debug for BlowupResult<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlowupResult")
            .field("chart1", &self.chart1)
            .field("chart2", &self.chart2)
            .field("l", &self.l)
            .field("dicritical", &self.dicritical)
            .finish()
    }
}

impl<F: Field> BlowupResult<F> {
    /// True iff chart 1, rewritten in chart 2 coordinates by `x = s y`,
    /// `t = 1/s` and cleared of powers of `s`, is chart 2 times a monomial.
    pub fn charts_consistent(&self) -> bool {
        let (p1, q1) = (&self.chart1.a, &self.chart1.b);
        // dx = y ds + s dy, dt = -ds / s²
        let shift = p1.degree_in(1).unwrap_or(0).max(q1.degree_in(1).unwrap_or(0) + 2);
        // x^i t^j ↦ s^(i - j + offset) y^i, with offset large enough to stay polynomial
        let to_chart2 = |p: &Polynomial<F>, offset: u32| -> Polynomial<F> {
            let mut out = Polynomial::zero(2);
            for (m, c) in p.terms() {
                let (i, j) = (m.exponent(0), m.exponent(1));
                out = &out + &Polynomial::monomial(Monomial::new(vec![i + offset - j, i]), c.clone());
            }
            out
        };
        let y = Polynomial::var(2, 1);
        let ds = &(&y * &to_chart2(p1, shift)) - &to_chart2(q1, shift - 2);
        let dy = to_chart2(p1, shift + 1);
        let (p2, q2) = (&self.chart2.a, &self.chart2.b);
        if &(&ds * q2) - &(&dy * p2) != Polynomial::zero(2) {
            return false;
        }
        let factor = if !p2.is_zero() { ds.div_exact(p2) } else { dy.div_exact(q2) };
        factor.is_some_and(|u| u.num_terms() == 1)
    }
}

/// `(K_F², K_F·K_X)` of a foliated surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceNumbers {
    #[serde(rename = "KF2")]
    pub kf2: i64,
    #[serde(rename = "KFKX")]
    pub kfkx: i64,
}

/// Numbers upstairs after a blow-up with vanishing order `l`, from
/// `K_F = π*K_G + (1-l)E`, `K_X = π*K_Y + E`, `E² = -1`, `π*D·E = 0`.
pub fn canonical_transform(n: SurfaceNumbers, l: u32) -> Result<SurfaceNumbers, LocalError> {
    let c = 1i64.checked_sub(l as i64).ok_or(LocalError::Overflow)?;
    let kf2 = c.checked_mul(c).and_then(|c2| n.kf2.checked_sub(c2)).ok_or(LocalError::Overflow)?;
    let kfkx = n.kfkx.checked_sub(c).ok_or(LocalError::Overflow)?;
    Ok(SurfaceNumbers { kf2, kfkx })
}

/// `K_F² > 0`: necessary for ampleness, not sufficient.
pub fn ampleness_necessary_check(n: SurfaceNumbers) -> bool {
    n.kf2 > 0
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolySource {
    Object(Polynomial<Rational>),
    Expr(String),
}

impl PolySource {
    fn into_poly(self) -> Result<Polynomial<Rational>, AlgError> {
        match self {
            PolySource::Object(p) => Ok(p),
            PolySource::Expr(s) => parse_polynomial(&s, &["x", "y"]),
        }
    }
}

#[derive(Deserialize)]
struct LocalJsonIn {
    a: PolySource,
    b: PolySource,
}

#[derive(Serialize)]
struct LocalJsonOut<'a> {
    a: &'a Polynomial<Rational>,
    b: &'a Polynomial<Rational>,
}

impl Serialize for LocalFoliation<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LocalJsonOut { a: &self.a, b: &self.b }.serialize(serializer)
    }
}

/// Validates on input: `a` and `b` may be polynomial objects or expressions in `x, y`.
impl<'de> Deserialize<'de> for LocalFoliation<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = LocalJsonIn::deserialize(deserializer)?;
        let a = json.a.into_poly().map_err(D::Error::custom)?;
        let b = json.b.into_poly().map_err(D::Error::custom)?;
        LocalFoliation::new(a, b).map_err(D::Error::custom)
    }
}

impl Serialize for BlowupResult<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            chart1: &'a LocalFoliation<Rational>,
            chart2: &'a LocalFoliation<Rational>,
            l: u32,
            dicritical: bool,
        }
        Out { chart1: &self.chart1, chart2: &self.chart2, l: self.l, dicritical: self.dicritical }
            .serialize(serializer)
    }
}
