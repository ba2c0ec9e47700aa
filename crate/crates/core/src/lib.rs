//! Exact computations around automorphism groups of projective webs and
//! foliations.
//!
//! * [`exactalg`]: rationals and sparse multivariate polynomials.
//! * [`symforms`]: k-symmetric 1-forms on projective space in homogeneous
//!   coordinates, with validation, degree, Lie derivative and line restriction.
//! * [`autgrp`]: projective linear maps, pullback, invariance, the polynomial
//!   system cutting out the automorphism group, and finite group closure.
//! * [`localfol`]: plane foliations in an affine chart, blow-ups and
//!   reducedness of singularities.
//! * [`bounds`]: exact big-integer evaluation of the automorphism-order bounds.
//!
//! The algebra is generic over any exact [`Field`]; the aliases below fix it
//! to arbitrary-precision rationals.

pub mod autgrp;
pub mod bounds;
pub mod exactalg;
pub mod localfol;
pub mod scalar;
pub mod symforms;

pub use scalar::Field;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Polynomial over [`Rational`].
pub type Poly = exactalg::Polynomial<Rational>;
/// Symmetric form over [`Rational`].
pub type Form = symforms::SymForm<Rational>;
/// Projective linear map over [`Rational`].
pub type Map = autgrp::ProjMap<Rational>;
/// Affine-chart plane foliation over [`Rational`].
pub type Local = localfol::LocalFoliation<Rational>;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
///
/// # Panics
///
/// Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
