use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point type the models are generic over (`f32`, `f64`).
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; infallible for the supported float types.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
