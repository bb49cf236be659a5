//! Scalar abstraction: every algebraic routine in this crate is generic over a
//! floating-point type. `f64` is the working precision of the whole test
//! battery; `f32` instantiations compile and run with proportionally looser
//! tolerances.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal (tolerances, reference constants).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }

    /// Degenerate-spectrum tie threshold: the documented `1e-12` for `f64`,
    /// widened to a few ulps for narrower types.
    fn tie_tol() -> Self {
        Self::of(1e-12).max(Self::epsilon() * Self::of(8.0))
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}
