use core::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the simulation is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant must be representable in the scalar type")
}
