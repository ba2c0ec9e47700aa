use std::cmp::Ordering;

/// Exponent vector `[e_0, ..., e_{n-1}]` standing for `x_0^e_0 ... x_{n-1}^e_{n-1}`.
///
/// Ordered graded-lexicographically with `x_0 < x_1 < ... < x_{n-1}`: total
/// degree first, then the exponent of the largest variable `x_{n-1}`, then
/// `x_{n-2}`, and so on. This single order fixes every normalization in the
/// crate (leading coefficients, serialization order, tie-breaking).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn with_exponent(&self, index: usize, value: u32) -> Monomial {
        let mut e = self.0.clone();
        e[index] = value;
        Monomial(e)
    }

    pub(crate) fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of length `nvars` with total degree `degree`, ascending.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(rest: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            rest.push(left);
            out.push(Monomial(rest.clone()));
            rest.pop();
            return;
        }
        for e in 0..=left {
            rest.push(e);
            fill(rest, left - e, slots - 1, out);
            rest.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out.sort();
    out
}
