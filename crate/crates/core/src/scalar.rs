use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for every computation in the crate.
///
/// Equality tests are exact, so only exact fields make the verification
/// results meaningful. Implemented automatically for anything that satisfies
/// the bounds; the crate aliases use `BigRational`.
pub trait Scalar:
    'static + Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }

    fn frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: 'static + Clone + Debug + Display + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}
