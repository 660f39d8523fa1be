use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BigComplex, BigRational};

/// Coefficient field for series: exact rationals or multi-precision complex
/// floats.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for BigComplex {
    fn from_i64(n: i64) -> Self {
        BigComplex::from_i64(n)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}
