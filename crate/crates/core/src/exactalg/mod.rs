//! Exact scalars and sparse multivariate polynomials.

mod gcd;
pub mod json;
mod monomial;
mod parse;
mod polynomial;

use thiserror::Error;

pub use gcd::{gcd, gcd_all};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::{default_var_names, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndex { index: usize, nvars: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
