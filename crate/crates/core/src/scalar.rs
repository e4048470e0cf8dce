//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
///
/// Blanket-implemented for every type that satisfies the bounds.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Sum + Send + Sync + 'static
{
    /// Convert an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Convert an index or count into `Self`.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// A tolerance of `x`, but never tighter than a small multiple of machine epsilon.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(16.0))
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + Debug
        + Display
        + LowerExp
        + Sum
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_respects_machine_precision() {
        assert_eq!(<f64 as Real>::tol(1e-10), 1e-10);
        assert!(<f32 as Real>::tol(1e-10) >= f32::EPSILON);
    }
}
