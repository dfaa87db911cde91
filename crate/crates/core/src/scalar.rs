//! Floating point abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the geometry, models and functionals are generic over: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an f64 constant.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}
