//! Exact scalar rings usable as polynomial coefficients.
//!
//! Everything above this module is generic over [`Scalar`]; the crate root
//! fixes `BigInt` for the public aliases. Machine integers are supported for
//! small experiments and cross-checks, but they overflow quickly: the number
//! of dihypergraphs on `n` nodes is `2^((2^b - 2) C(n, b))`.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, NumAssign};

pub trait Scalar:
    Num
    + NumAssign
    + Neg<Output = Self>
    + FromPrimitive
    + PartialOrd
    + Clone
    + Debug
    + Display
    + Send
    + Sync
{
    /// `self += a * b` without cloning the operands.
    fn add_product(&mut self, a: &Self, b: &Self);

    fn from_count(c: u64) -> Self {
        Self::from_u64(c).expect("count fits the scalar type")
    }
}

macro_rules! impl_scalar_prim {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn add_product(&mut self, a: &Self, b: &Self) {
                *self += *a * *b;
            }
        }
    )*};
}

impl_scalar_prim!(i64, i128);

impl Scalar for BigInt {
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}
