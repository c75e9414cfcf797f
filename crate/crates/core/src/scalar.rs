//! Scalar abstraction: everything numeric is generic over the underlying
//! real floating-point type, with `f64` aliases provided at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`) underlying all matrices,
/// states and couplings.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Lift an `f64` constant into the scalar type.
#[inline]
pub(crate) fn real<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("constant not representable in scalar type")
}

/// A tolerance threshold with a floor of `100·ε` so that contracts written
/// against f64 precision remain meaningful for wider-epsilon scalars.
#[inline]
pub(crate) fn atol<R: Real>(base: f64) -> R {
    let floor = R::epsilon() * real::<R>(100.0);
    real::<R>(base).max(floor)
}

/// Smallest magnitude treated as a physically realizable probability;
/// anything below is an extinguished branch.
#[inline]
pub(crate) fn prob_floor<R: Real>() -> R {
    real::<R>(1e-300).max(R::min_positive_value())
}
