//! Coefficient fields.
//!
//! Everything in this crate decides equalities exactly (proportionality of
//! forms, vanishing of minors, divisibility), so the scalar must be an exact
//! field. [`Field`] is implemented for every [`Ratio`] over a signed integer
//! type: `Ratio<BigInt>` is the production choice, `Ratio<i64>` and
//! `Ratio<i128>` are handy for small, fast experiments.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact, ordered field of characteristic zero.
pub trait Field:
    Num + Signed + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn is_integer(&self) -> bool;

    /// Square root inside the field, if the element is a square there.
    fn sqrt_exact(&self) -> Option<Self>;
}

impl<T> Field for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Roots
        + FromPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from_i64(value).expect("integer type too narrow for i64"))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // numerator and denominator are coprime, so both must be squares
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if n.clone() * n.clone() == *self.numer() && d.clone() * d.clone() == *self.denom() {
            Some(Ratio::new(n, d))
        } else {
            None
        }
    }
}

/// `n` copies of one, for fields where `from_i64` may not cover large counts.
pub(crate) fn from_usize<F: Field>(n: usize) -> F {
    F::from_i64(i64::try_from(n).expect("count exceeds i64"))
}
