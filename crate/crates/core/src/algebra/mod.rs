//! Exact rationals, truncated power and Laurent series, and a
//! multi-precision binary float used by the numeric parts of the crate.
//!
//! Every series carries its truncation explicitly. Binary operations on
//! series of different truncation produce the smaller truncation; nothing
//! is ever extended past what the inputs determine.

mod bigfloat;
mod biseries;
mod laurent;
mod multiseries;
pub mod rational;
mod scalar;
mod series;

use std::fmt;

pub use bigfloat::{BigComplex, BigFloat, DEFAULT_PRECISION, EXACT};
pub use biseries::BiSeriesXH;
pub use laurent::LaurentSeries;
pub use multiseries::MultiSeries;
pub use rational::BigRational;
pub use scalar::Scalar;
pub use series::PowerSeries;

/// Tag naming the formal variable of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Var(pub char);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Var {
    pub const X: Var = Var('x');
    pub const Z: Var = Var('z');
    pub const T: Var = Var('t');
    pub const HBAR: Var = Var('ħ');
}
