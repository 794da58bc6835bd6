//! Scalar abstraction: the numerical kernels are generic over the working
//! float type.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Working scalar for all kernels: f64 in production, f32 compiles too.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Shorthand for lossy conversion from f64 literals and tables.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts into every Real")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("every Real converts into f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
