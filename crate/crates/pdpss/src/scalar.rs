//! Generic real scalar for all numeric kernels: f32 or f64.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar abstraction over which every matrix builder, transform and
/// solver in this crate is parameterized.
///
/// Requires the usual field operations plus `sqrt`, `sin`, `cos`, `atan2`,
/// comparison, and a unit-roundoff query (`Float::epsilon`). Only `f64` is
/// tuned for the documented accuracy contracts; `f32` compiles and runs but
/// the fixed tolerances quoted throughout the docs assume binary64.
pub trait Real: Float + FloatConst + FromPrimitive + core::fmt::Debug + core::fmt::Display + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal (tolerances, constants).
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }

    /// Conversion from an index or dimension.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}
