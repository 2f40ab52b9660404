//! Scalar abstractions: a floating-point scalar for the operator algebra and
//! solvers, and an ordered-field scalar for the simplex (which also admits
//! exact rationals).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, Signed};

/// Floating-point scalar underlying complex matrices, optimizers and the SDP
/// solver. Implemented by `f32` and `f64`.
pub trait Scalar:
    Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for lossy conversion of literals and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Ordered-field scalar for the simplex solver. `f64` gives the fast path;
/// `BigRational` gives exact pivoting and exact certificates.
pub trait LpScalar: Num + Signed + PartialOrd + Clone + Debug + Send + Sync + 'static {
    /// Comparison threshold for "is zero" / pivot admissibility. Zero for
    /// exact arithmetic.
    fn pivot_tol() -> Self;

    /// Exact embedding of an `f64` (every finite double is a rational).
    fn from_f64_exact(x: f64) -> Self;

    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn pivot_tol() -> Self {
        1e-9
    }

    fn from_f64_exact(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn pivot_tol() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_embedding_is_exact() {
        let x = 0.1f64;
        let r = BigRational::from_f64_exact(x);
        assert_eq!(LpScalar::to_f64(&r), x);
        assert!(BigRational::pivot_tol() == BigRational::from_integer(BigInt::from(0)));
    }

    #[test]
    fn scalar_of_roundtrips() {
        assert_eq!(<f64 as Scalar>::of(0.25), 0.25);
        assert_eq!(<f32 as Scalar>::of(0.25), 0.25f32);
    }
}
