//! Scalar traits used across the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Floating-point scalar for matrices, amplitudes, and tolerances.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Field scalar for polynomial evaluation.
///
/// Satisfied by `f32`/`f64` and by exact types such as
/// `num_rational::BigRational`, so the same evaluation code serves both the
/// production path and the exact-arithmetic test oracles.
pub trait PolyScalar:
    Num + Clone + PartialOrd + std::ops::Neg<Output = Self> + FromPrimitive
{
    /// Lossless embedding of a (small) signed integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer embeds into scalar")
    }
}

impl<T> PolyScalar for T where
    T: Num + Clone + PartialOrd + std::ops::Neg<Output = T> + FromPrimitive
{
}

/// `base^exp` by repeated multiplication, with `base^0 = 1`.
pub fn powi<T: PolyScalar>(base: &T, exp: usize) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}
