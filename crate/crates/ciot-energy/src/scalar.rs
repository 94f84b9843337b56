//! Scalar abstraction for the model arithmetic.
//!
//! All continuous quantities (times in ms, powers in mW, energies in µJ)
//! are generic over [`Scalar`] so the model can run in `f32` or `f64`.
//! The crate-root type aliases pin `f64` as the default.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::{de::DeserializeOwned, Serialize};

pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    fn from_f64(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 constant not representable")
    }

    fn from_count(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("count not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for lifting an `f64` literal into the working scalar type.
pub fn lit<F: Scalar>(v: f64) -> F {
    <F as Scalar>::from_f64(v)
}
