//! Projective linear maps acting on symmetric forms.
//!
//! A map `T` acts on `P^N` by `x ↦ T x`; the pullback of
//! `ω = Σ A_I dx^I` is `Σ A_I(T x) (T dx)^I`. The web is `T`-invariant when
//! `T*ω` is a scalar multiple of `ω`.

mod closure;
mod hij;
pub mod json;
mod projmap;

use thiserror::Error;

use crate::bounds::BoundsError;
use crate::exactalg::Polynomial;
use crate::scalar::Field;
use crate::symforms::{FormError, SymForm};

pub use closure::{group_closure, signed_permutation_automorphisms, FiniteGroup, DEFAULT_CAP};
pub use hij::{hij_symbolic, hij_system, matrix_var_names, BezoutSystem};
pub use projmap::ProjMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has size {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("generator {index} does not preserve the form")]
    NotPreserved { index: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("{}", cap_message(*cap, *certified_infinite))]
    CapExceeded { cap: usize, certified_infinite: bool },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Bound(#[from] BoundsError),
    #[error("malformed system: {0}")]
    System(String),
}

fn cap_message(cap: usize, certified_infinite: bool) -> String {
    if certified_infinite {
        format!("cap exceeded: an element of infinite order was generated (cap {cap})")
    } else {
        format!("cap exceeded: more than {cap} elements")
    }
}

impl AutError {
    pub fn name(&self) -> &'static str {
        match self {
            AutError::NotSquare => "not_square",
            AutError::Singular => "singular_matrix",
            AutError::SizeMismatch { .. } => "size_mismatch",
            AutError::NotPreserved { .. } => "generator_not_preserving",
            AutError::NoGenerators => "no_generators",
            AutError::CapExceeded { .. } => "cap_exceeded",
            AutError::Form(e) => e.name(),
            AutError::Bound(e) => e.name(),
            AutError::System(_) => "malformed_system",
        }
    }

    pub fn is_input_error(&self) -> bool {
        match self {
            AutError::CapExceeded { .. } => false,
            AutError::Form(e) => e.is_input_error(),
            _ => true,
        }
    }
}

/// `T*ω`: substitutes `x ↦ T x` and `dx ↦ T dx`, re-collected by `dx^I`.
pub fn pullback<F: Field>(t: &ProjMap<F>, form: &SymForm<F>) -> Result<SymForm<F>, AutError> {
    let n1 = form.n() + 1;
    if t.dim() != n1 {
        return Err(AutError::SizeMismatch { expected: n1, found: t.dim() });
    }
    let nv = 2 * n1;
    let mut images = Vec::with_capacity(nv);
    for offset in [0, n1] {
        for i in 0..n1 {
            let mut p = Polynomial::zero(nv);
            for j in 0..n1 {
                let a = t.entry(i, j);
                if !a.is_zero() {
                    p = &p + &Polynomial::var(nv, offset + j).scale(a);
                }
            }
            images.push(p);
        }
    }
    let pulled = form.to_bigraded().substitute(&images).map_err(FormError::from)?;
    Ok(SymForm::from_bigraded(form.n(), form.k(), &pulled)?)
}

/// True iff `T*ω` is a constant multiple of `ω`.
pub fn preserves<F: Field>(t: &ProjMap<F>, form: &SymForm<F>) -> Result<bool, AutError> {
    Ok(form.proportional_to(&pullback(t, form)?))
}

/// `order ≤ (d+2k)^((N+1)²-1)`.
pub fn verify_bound(order: &num_bigint::BigUint, d: u32, k: u32, n: u32) -> Result<bool, AutError> {
    Ok(*order <= crate::bounds::web_aut_bound(d, k, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, Map};

    fn example() -> Form {
        Form::parse(2, "-y*z^2*dx + (x*z^2 + z*y^2)*dy - y^3*dz").unwrap()
    }

    #[test]
    fn identity_pullback() {
        let w = example();
        assert_eq!(pullback(&Map::identity(3), &w).unwrap(), w);
    }

    #[test]
    fn swap_invariant_form() {
        let w = Form::parse(2, "x*z*dy + y*z*dx - 2*x*y*dz").unwrap();
        let s = Map::swap(3, 0, 1);
        assert_eq!(pullback(&s, &w).unwrap(), w);
        assert!(preserves(&s, &w).unwrap());
        assert!(!preserves(&s, &example()).unwrap());
    }

    #[test]
    fn diagonal_scales_radial() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        let t = Map::diagonal(vec![rat(3), rat(1), rat(1)]).unwrap();
        assert_eq!(pullback(&t, &w).unwrap(), w.scale(&rat(3)));
    }

    #[test]
    fn size_mismatch() {
        let w = example();
        assert!(matches!(pullback(&Map::identity(2), &w), Err(AutError::SizeMismatch { .. })));
    }

    #[test]
    fn bound_boundary() {
        use num_bigint::BigUint;
        assert!(verify_bound(&BigUint::from(65536u32), 2, 1, 2).unwrap());
        assert!(!verify_bound(&BigUint::from(65537u32), 2, 1, 2).unwrap());
        assert!(verify_bound(&BigUint::from(2u32), 1, 2, 2).unwrap());
        assert!(verify_bound(&BigUint::from(2u32), 1, 1, 1).is_err());
    }
}
