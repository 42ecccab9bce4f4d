//! Scalar abstraction for the floating-point kernels (LP solver, column
//! scaling). The combinatorial core works in exact integers and does not go
//! through this trait.

use num_traits::{Float, NumAssign, NumCast};

/// Floating-point scalar usable by the simplex kernel: `f32` or `f64`.
pub trait Scalar: Float + NumAssign + NumCast + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    /// Lossy conversion from `f64`, used to inject tolerances and integer
    /// coordinates into the generic kernel.
    fn of(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("finite f64 converts to any Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
