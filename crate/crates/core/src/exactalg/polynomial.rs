use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgError, Monomial};
use crate::scalar::{from_usize, Field};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration follows the
/// canonical graded order and two polynomials are equal exactly when their
/// term maps are. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, index), F::one());
        p
    }

    pub fn monomial(mono: Monomial, c: F) -> Self {
        let mut p = Self::zero(mono.nvars());
        p.add_term(mono, c);
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs; repeated
    /// monomials are summed and zeros dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, AlgError>
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(AlgError::ExponentLength { expected: nvars, found: exp.len() });
            }
            p.add_term(Monomial::new(exp), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> F {
        self.terms.get(mono).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Greatest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree among the terms; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Largest power of `x_var` dividing the polynomial; `None` for zero.
    pub fn valuation_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: F) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgError> {
        if self.nvars != other.nvars {
            return Err(AlgError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact product; fails only on a variable-count mismatch.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Result<Self, AlgError> {
        if var >= self.nvars {
            return Err(AlgError::VarIndex { index: var, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c.clone() * from_usize::<F>(e as usize));
            }
        }
        Ok(out)
    }

    /// Value at `point`.
    pub fn eval(&self, point: &[F]) -> Result<F, AlgError> {
        if point.len() != self.nvars {
            return Err(AlgError::PointLength { expected: self.nvars, found: point.len() });
        }
        let mut powers: Vec<Vec<F>> = point.iter().map(|v| vec![F::one(), v.clone()]).collect();
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().cloned().unwrap() * table[1].clone();
                    table.push(next);
                }
                term = term * table[e as usize].clone();
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self, AlgError> {
        if images.len() != self.nvars {
            return Err(AlgError::PointLength { expected: self.nvars, found: images.len() });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgError::NvarsMismatch { left: target, right: bad.nvars });
        }
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &table[1];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.nvars != self.nvars || divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        // dividing by one leading term: if the divisor divides, every step must succeed
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc.clone() / dc.clone();
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides by `x_var^e`, which must divide every term.
    pub fn div_var_power(&self, var: usize, e: u32) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let have = m.exponent(var);
            if have < e {
                return None;
            }
            out.add_term(m.with_exponent(var, have - e), c.clone());
        }
        Some(out)
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&(F::one() / lc.clone())),
            None => self.clone(),
        }
    }

    /// Re-embeds into `nvars` variables, sending old variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Splits `self` in `head + tail` variables by the monomial in the last
    /// `tail` variables; each coefficient is a polynomial in the first `head`.
    pub fn split_tail(&self, head: usize) -> BTreeMap<Monomial, Polynomial<F>> {
        let mut out: BTreeMap<Monomial, Polynomial<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (h, t) = m.exponents().split_at(head);
            out.entry(Monomial::new(t.to_vec()))
                .or_insert_with(|| Polynomial::zero(head))
                .add_term(Monomial::new(h.to_vec()), c.clone());
        }
        out
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Renders with the given variable names, greatest term first.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    let name = names.get(j).map(|n| n.to_string()).unwrap_or_else(|| format!("x{j}"));
                    if e == 1 { name } else { format!("{name}^{e}") }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }
}

/// Conventional names: `x, y` / `x, y, z` / `x, y, z, w`, otherwise `x0, x1, ...`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        4 => vec!["x".into(), "y".into(), "z".into(), "w".into()],
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

// Operator impls panic on a variable-count mismatch; the `try_*` methods report it.

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
