//! Scalar abstraction: the numeric code works for `f32` and `f64`.

use std::fmt;

/// Floating-point scalar usable for embedding values, thresholds, and
/// search bounds.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + fmt::Debug
    + fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Widens to `f64` (lossless for both supported types).
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar widens to f64")
    }

    /// Narrows from `f64`, rounding to the nearest representable value.
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("f64 narrows to scalar")
    }
}

impl<T> Scalar for T where
    T: num_traits::Float
        + num_traits::FromPrimitive
        + num_traits::ToPrimitive
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}
