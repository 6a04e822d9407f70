//! Scalar types that formula values can be accumulated in.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// Anything formula coefficients and values can live in: exact rationals in
/// practice, floats for quick estimates.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + Debug {
    fn from_count(n: i64) -> Self {
        Self::from_i64(n).expect("count is representable")
    }
}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Clone + Debug {}
