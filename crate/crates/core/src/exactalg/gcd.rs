//! Multivariate GCD by recursive content / primitive-part reduction.
//!
//! A polynomial is viewed as univariate in its highest-index variable with
//! coefficients in the remaining ones. The gcd is the gcd of the contents
//! (recursively) times the gcd of the primitive parts, found with a primitive
//! pseudo-remainder sequence.

use super::{Monomial, Polynomial};
use crate::scalar::Field;

/// Greatest common divisor, normalized to leading coefficient one.
///
/// `gcd(p, 0)` is `p` made monic and `gcd(0, 0)` is zero.
///
/// # Panics
///
/// Panics if `p` and `q` live in different numbers of variables.
pub fn gcd<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>) -> Polynomial<F> {
    assert_eq!(p.nvars(), q.nvars(), "gcd of polynomials in different rings");
    raw_gcd(p, q).monic()
}

/// Gcd of a whole family; zero for an empty or all-zero family.
pub fn gcd_all<'a, F: Field, I>(nvars: usize, polys: I) -> Polynomial<F>
where
    I: IntoIterator<Item = &'a Polynomial<F>>,
{
    let mut g = Polynomial::zero(nvars);
    for p in polys {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

fn raw_gcd<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>) -> Polynomial<F> {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(p.nvars());
    }
    let v = (0..p.nvars())
        .rev()
        .find(|&i| p.degree_in(i).unwrap_or(0) > 0 || q.degree_in(i).unwrap_or(0) > 0)
        .expect("nonconstant polynomial has a variable");
    if p.degree_in(v) == Some(0) {
        return raw_gcd(p, &content(q, v));
    }
    if q.degree_in(v) == Some(0) {
        return raw_gcd(&content(p, v), q);
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let pp = p.div_exact(&cp).expect("content divides");
    let qp = q.div_exact(&cq).expect("content divides");
    let c = raw_gcd(&cp, &cq);
    let g = primitive_prs(pp, qp, v);
    (&c * &g).monic()
}

/// Coefficients of `p` as a polynomial in `x_v`, indexed by the power of `x_v`.
fn coefficients_in<F: Field>(p: &Polynomial<F>, v: usize) -> Vec<Polynomial<F>> {
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![Polynomial::zero(p.nvars()); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        out[e].add_term(m.with_exponent(v, 0), c.clone());
    }
    out
}

fn leading_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    coefficients_in(p, v).pop().unwrap_or_else(|| Polynomial::zero(p.nvars()))
}

fn content<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let coeffs = coefficients_in(p, v);
    let mut g = Polynomial::zero(p.nvars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = raw_gcd(&g, c);
        if g.is_constant() {
            return Polynomial::one(p.nvars());
        }
    }
    g
}

fn primitive_part<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn pseudo_remainder<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let db = b.degree_in(v).unwrap_or(0);
    let lcb = leading_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lcr = leading_in(&r, v);
        let mut shift = vec![0; r.nvars()];
        shift[v] = dr - db;
        let step = (&lcr * b).mul_monomial(&Monomial::new(shift));
        r = &(&lcb * &r) - &step;
    }
    r
}

fn primitive_prs<F: Field>(
    mut a: Polynomial<F>,
    mut b: Polynomial<F>,
    v: usize,
) -> Polynomial<F> {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(v) == Some(0) {
            return Polynomial::one(a.nvars());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}
