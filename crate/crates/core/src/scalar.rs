//! The exact integer scalar all matrix and polynomial code is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type.
///
/// Implemented for every type with the right `num-traits` surface, which in
/// practice means `i64`, `i128` and [`num_bigint::BigInt`]. Mutation weights grow
/// doubly exponentially along mutation paths, so the fixed-width choices are
/// only safe for shallow experiments; the crate-root aliases use `BigInt`.
pub trait Scalar:
    Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(x: i64) -> Self {
        Self::from_i64(x).expect("every scalar type holds i64 values")
    }

    /// `max(0, self)`.
    fn pos_part(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Hash + Ord + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub(crate) fn sc<T: Scalar>(x: i64) -> T {
    T::from_i64_exact(x)
}
