//! Exact scalar fields.
//!
//! Every computation in this crate decides equalities (ranks, kernels, class
//! vanishing) by comparing against zero, so the scalar type must be an exact
//! field of characteristic zero. [`Scalar`] is implemented for the rational
//! types of `num-rational`; floating point types deliberately do not
//! implement it.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// The element `numer / denom`. Panics if `denom == 0`.
    fn from_frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i64(numer).expect("integer fits in the field")
            / Self::from_i64(denom).expect("integer fits in the field")
    }

    fn from_int(n: i64) -> Self {
        Self::from_frac(n, 1)
    }
}

impl Scalar for Ratio<BigInt> {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}

/// `(-1)^(a*b)` for parities `a`, `b`.
pub(crate) fn sign<T: Scalar>(a: u8, b: u8) -> T {
    if a & b & 1 == 1 {
        -T::one()
    } else {
        T::one()
    }
}
