use std::fmt;

use super::AutError;
use crate::exactalg::{gcd, Monomial, Polynomial};
use crate::scalar::{from_usize, Field};

/// Invertible `(N+1)×(N+1)` matrix acting on `P^N` by `x ↦ M x`.
///
/// A `ProjMap` keeps the representative it was built from, so pullbacks
/// are exact for that matrix. Two maps define the same projective
/// transformation iff their [`normalized`](ProjMap::normalized) forms are
/// equal: scaled so the first nonzero entry in row-major order is one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMap<F> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Field> ProjMap<F> {
    pub fn new(rows: Vec<Vec<F>>) -> Result<Self, AutError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(AutError::NotSquare);
        }
        let map = ProjMap { dim, entries: rows.into_iter().flatten().collect() };
        if map.determinant().is_zero() {
            return Err(AutError::Singular);
        }
        Ok(map)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![F::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = F::one();
        }
        ProjMap { dim, entries }
    }

    pub fn diagonal(values: Vec<F>) -> Result<Self, AutError> {
        let dim = values.len();
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { values[i].clone() } else { F::zero() }).collect())
            .collect();
        Self::new(rows)
    }

    /// `x_i ↦ sign_i · x_{perm[i]}`.
    pub fn signed_permutation(perm: &[usize], signs: &[bool]) -> Result<Self, AutError> {
        let dim = perm.len();
        if signs.len() != dim {
            return Err(AutError::NotSquare);
        }
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match (perm[i] == j, signs[i]) {
                        (false, _) => F::zero(),
                        (true, true) => -F::one(),
                        (true, false) => F::one(),
                    })
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    /// Exchanges coordinates `i` and `j`.
    pub fn swap(dim: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.swap(i, j);
        Self::signed_permutation(&perm, &vec![false; dim]).expect("permutations are invertible")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.entries.chunks(self.dim).map(<[F]>::to_vec).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    /// Canonical representative of the projective class.
    pub fn normalized(&self) -> Self {
        let lead = self.entries.iter().find(|e| !e.is_zero()).expect("invertible matrix").clone();
        if lead.is_one() {
            return self.clone();
        }
        let inv = F::one() / lead;
        ProjMap { dim: self.dim, entries: self.entries.iter().map(|e| e.clone() * inv.clone()).collect() }
    }

    pub fn same_projective_map(&self, other: &Self) -> bool {
        self.dim == other.dim && self.normalized() == other.normalized()
    }

    pub fn is_projective_identity(&self) -> bool {
        self.normalized() == Self::identity(self.dim)
    }

    /// Matrix product `self · other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, AutError> {
        if self.dim != other.dim {
            return Err(AutError::SizeMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut entries = vec![F::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(l, j);
                    if !b.is_zero() {
                        entries[i * n + j] = entries[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(ProjMap { dim: n, entries })
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible matrix");
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = F::one() / a[col][col].clone();
            for j in 0..n {
                a[col][j] = a[col][j].clone() * p.clone();
                inv[col][j] = inv[col][j].clone() * p.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
        ProjMap { dim: n, entries: inv.into_iter().flatten().collect() }
    }

    pub fn determinant(&self) -> F {
        let n = self.dim;
        let mut a = self.rows();
        let mut det = F::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return F::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            let p = a[col][col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / p.clone();
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        det
    }

    /// Elementary symmetric functions `e_1..e_n` of the eigenvalues
    /// (Faddeev–LeVerrier).
    pub fn eigen_symmetric_functions(&self) -> Vec<F> {
        let n = self.dim;
        let a = self.rows();
        let mul = |x: &Vec<Vec<F>>, y: &Vec<Vec<F>>| -> Vec<Vec<F>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(F::zero(), |s, l| s + x[i][l].clone() * y[l][j].clone()))
                        .collect()
                })
                .collect()
        };
        // characteristic polynomial t^n + c_1 t^{n-1} + ... + c_n, with e_j = (-1)^j c_j
        let mut m = vec![vec![F::zero(); n]; n];
        let mut c_prev = F::one();
        let mut e = Vec::with_capacity(n);
        for k in 1..=n {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = row[i].clone() + c_prev.clone();
            }
            let am = mul(&a, &m);
            let tr = (0..n).fold(F::zero(), |s, i| s + am[i][i].clone());
            let c_k = -tr / from_usize::<F>(k);
            e.push(if k % 2 == 0 { c_k.clone() } else { -c_k.clone() });
            m = am;
            c_prev = c_k;
        }
        e
    }

    /// A certificate that the class of `self` in PGL has infinite order.
    ///
    /// If `M^r` is scalar then `M` is diagonalizable, and its eigenvalues are
    /// `μ·ζ_i` with roots of unity `ζ_i`, so each
    /// `e_j^n / det^j = e_j(ζ)^n / (Πζ)^j` is a rational algebraic integer of
    /// absolute value at most `C(n, j)^n`. Failing either test proves
    /// infinite order; passing both proves nothing.
    pub fn certainly_infinite_order(&self) -> bool {
        let n = self.dim;
        let det = self.determinant();
        let e = self.eigen_symmetric_functions();
        if !self.is_diagonalizable(&e) {
            return true;
        }
        let mut binom: u64 = 1;
        for (j, ej) in e.iter().enumerate() {
            let j = j + 1;
            binom = binom * (n - j + 1) as u64 / j as u64;
            let mut num = F::one();
            for _ in 0..n {
                num = num * ej.clone();
            }
            let mut den = F::one();
            for _ in 0..j {
                den = den * det.clone();
            }
            let q = num / den;
            if !q.is_integer() {
                return true;
            }
            let limit = binom.checked_pow(n as u32).and_then(|b| i64::try_from(b).ok());
            if let Some(limit) = limit {
                if q.abs() > F::from_i64(limit) {
                    return true;
                }
            }
        }
        false
    }
}

impl<F: Field> ProjMap<F> {
    /// Over the algebraic closure: the square-free part of the
    /// characteristic polynomial annihilates `self`.
    fn is_diagonalizable(&self, e: &[F]) -> bool {
        let n = self.dim;
        let mut terms = Vec::with_capacity(n + 1);
        terms.push((vec![n as u32], F::one()));
        for (j, ej) in e.iter().enumerate() {
            let c = if j % 2 == 0 { -ej.clone() } else { ej.clone() };
            terms.push((vec![(n - j - 1) as u32], c));
        }
        let chi = Polynomial::from_terms(1, terms).expect("univariate terms");
        let chi_prime = chi.partial(0).expect("variable 0 exists");
        let radical = chi.div_exact(&gcd(&chi, &chi_prime)).expect("gcd divides");
        // Horner: r(M) = (...(c_top M + c) M + ...) + c_0
        let degree = radical.degree().unwrap_or(0);
        let mut acc = Self::identity(n).scaled(&radical.coefficient(&Monomial::new(vec![degree])));
        for i in (0..degree).rev() {
            acc = acc.compose(self).expect("same size");
            let c = radical.coefficient(&Monomial::new(vec![i]));
            for d in 0..n {
                acc.entries[d * n + d] = acc.entries[d * n + d].clone() + c.clone();
            }
        }
        acc.entries.iter().all(F::is_zero)
    }

    fn scaled(mut self, c: &F) -> Self {
        for x in &mut self.entries {
            *x = x.clone() * c.clone();
        }
        self
    }
}

impl<F: Field> fmt::Display for ProjMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl<F: Field> fmt::Debug for ProjMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMap{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Map};

    fn m(rows: &[&[i64]]) -> Map {
        Map::new(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn rejects_singular_and_ragged() {
        let z = Map::new(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert!(matches!(z, Err(AutError::Singular)));
        assert!(matches!(Map::new(vec![vec![rat(1)], vec![rat(0), rat(1)]]), Err(AutError::NotSquare)));
    }

    #[test]
    fn normalization_fixes_scale() {
        let a = m(&[&[0, 2], &[4, 0]]);
        assert_eq!(a.normalized(), Map::new(vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]]).unwrap());
        assert!(a.same_projective_map(&m(&[&[0, -1], &[-2, 0]])));
        assert!(m(&[&[3, 0], &[0, 3]]).is_projective_identity());
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(a.determinant(), rat(5));
        assert_eq!(a.compose(&a.inverse()).unwrap(), Map::identity(3));
        assert_eq!(a.inverse().entry(0, 0), &ratio(1, 5));
    }

    #[test]
    fn characteristic_data() {
        // eigenvalues 2, 3, 5
        let d = Map::diagonal(vec![rat(2), rat(3), rat(5)]).unwrap();
        assert_eq!(d.eigen_symmetric_functions(), vec![rat(10), rat(31), rat(30)]);
    }

    #[test]
    fn infinite_order_certificate() {
        assert!(Map::diagonal(vec![rat(2), rat(1), rat(1)]).unwrap().certainly_infinite_order());
        assert!(m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).certainly_infinite_order());
        assert!(m(&[&[-1, 1], &[0, -1]]).certainly_infinite_order());
        for finite in [
            Map::identity(3),
            Map::swap(3, 0, 1),
            m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
            m(&[&[0, -1], &[1, 0]]),
            m(&[&[0, -1], &[1, -1]]),
            m(&[&[1, -1], &[1, 0]]),
            Map::diagonal(vec![rat(-3), rat(3), rat(3)]).unwrap(),
        ] {
            assert!(!finite.certainly_infinite_order(), "{finite}");
        }
    }
}
