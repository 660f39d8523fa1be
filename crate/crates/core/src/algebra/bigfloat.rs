//! Binary floating point of arbitrary precision: `mantissa * 2^exponent`
//! with the mantissa rounded to `prec` bits after every operation.
//!
//! The precision of an operation's result is the minimum of its operands'
//! precisions. Integers and dyadic constants built with [`BigFloat::from_i64`]
//! or [`BigFloat::from_f64`] carry the [`EXACT`] marker and never force
//! rounding on their own. Dividing two exact values rounds at
//! [`DEFAULT_PRECISION`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRational;

/// Precision marker for values that are represented exactly.
pub const EXACT: u32 = u32::MAX;

/// Working precision in bits used when none is requested.
pub const DEFAULT_PRECISION: u32 = 512;

#[derive(Clone, Debug)]
pub struct BigFloat {
    /// Odd or zero after normalisation.
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn normalize(mant: BigInt, mut exp: i64, prec: u32) -> BigFloat {
    if mant.is_zero() {
        return BigFloat { mant, exp: 0, prec };
    }
    let sign = mant.sign();
    let mut mag: BigUint = mant.into_parts().1;
    if prec != EXACT {
        let bits = mag.bits();
        if bits > u64::from(prec) {
            let shift = bits - u64::from(prec);
            let half = BigUint::one() << (shift - 1);
            mag = (mag + half) >> shift;
            exp += shift as i64;
        }
    }
    let tz = mag.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        mag >>= tz;
        exp += tz as i64;
    }
    BigFloat { mant: BigInt::from_biguint(sign, mag), exp, prec }
}

impl BigFloat {
    pub fn zero_with_precision(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        normalize(n, 0, EXACT)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 {x}");
        if x == 0.0 {
            return Self::zero_with_precision(EXACT);
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        let m = if negative { -BigInt::from(m) } else { BigInt::from(m) };
        normalize(m, e, EXACT)
    }

    /// Nearest `prec`-bit float to `q`.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = normalize(q.numer().clone(), 0, EXACT);
        let den = normalize(q.denom().clone(), 0, EXACT);
        div_at(&num, &den, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Re-rounds to `prec` bits and relabels the precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        normalize(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            (&self.mant >> ((bits - 60) as usize), self.exp + bits - 60)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(0.0);
        let e = e.clamp(-2000, 2000) as i32;
        // two steps avoid overflow of 2^e on its own
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Exact test of `|x| < 2^k`.
    pub fn abs_below_pow2(&self, k: i64) -> bool {
        match self.log2_floor() {
            None => true,
            Some(l) => l < k,
        }
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let q = self.to_rational().abs();
        let log2 = self.log2_floor().unwrap_or(0) as f64;
        let mut k = (log2 * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigRational::from_integer(BigInt::from(10));
        let n = loop {
            let e = digits as i64 - 1 - k;
            let scaled = if e >= 0 { &q * pow_rational(&ten, e as u64) } else { &q / pow_rational(&ten, (-e) as u64) };
            let n = scaled.round().to_integer();
            let len = n.to_string().len();
            match len.cmp(&digits) {
                Ordering::Greater => k += 1,
                Ordering::Less => k -= 1,
                Ordering::Equal => break n,
            }
        };
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 1 {
            format!("{sign}{s}e{k}")
        } else {
            format!("{sign}{}.{}e{k}", &s[..1], &s[1..])
        }
    }
}

fn pow_rational(base: &BigRational, e: u64) -> BigRational {
    num_traits::pow(base.clone(), e as usize)
}

fn add_at(a: &BigFloat, b: &BigFloat, prec: u32) -> BigFloat {
    if a.is_zero() {
        return b.with_precision(prec);
    }
    if b.is_zero() {
        return a.with_precision(prec);
    }
    if prec != EXACT {
        let ta = a.exp + a.mant.bits() as i64;
        let tb = b.exp + b.mant.bits() as i64;
        let guard = i64::from(prec) + 2;
        if ta > tb + guard {
            return a.with_precision(prec);
        }
        if tb > ta + guard {
            return b.with_precision(prec);
        }
    }
    let e = a.exp.min(b.exp);
    let ma = &a.mant << ((a.exp - e) as usize);
    let mb = &b.mant << ((b.exp - e) as usize);
    normalize(ma + mb, e, prec)
}

fn div_at(a: &BigFloat, b: &BigFloat, prec: u32) -> BigFloat {
    assert!(!b.is_zero(), "BigFloat division by zero");
    if a.is_zero() {
        return BigFloat::zero_with_precision(prec);
    }
    if b.mant.magnitude().is_one() {
        // a power of two: exact at any precision
        let mant = if b.is_negative() { -&a.mant } else { a.mant.clone() };
        return normalize(mant, a.exp - b.exp, prec);
    }
    let prec = if prec == EXACT { DEFAULT_PRECISION } else { prec };
    let shift = (i64::from(prec) + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
    let num = a.mant.magnitude() << (shift as usize);
    let (mut q, r) = num.div_rem(b.mant.magnitude());
    let mut exp = a.exp - b.exp - shift;
    if !r.is_zero() {
        // sticky bit so that rounding never sees a false tie
        q = (q << 1u32) + BigUint::one();
        exp -= 1;
    }
    let sign = if a.is_negative() == b.is_negative() { Sign::Plus } else { Sign::Minus };
    normalize(BigInt::from_biguint(sign, q), exp, prec)
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && self.exp == other.exp
    }
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        add_at(self, rhs, self.prec.min(rhs.prec))
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        add_at(self, &-rhs, self.prec.min(rhs.prec))
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        normalize(&self.mant * &rhs.mant, self.exp + rhs.exp, self.prec.min(rhs.prec))
    }
}

impl<'a> Div<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        div_at(self, rhs, self.prec.min(rhs.prec))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(BigFloat, Add, add);
forward_owned!(BigFloat, Sub, sub);
forward_owned!(BigFloat, Mul, mul);
forward_owned!(BigFloat, Div, div);

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20))
    }
}

/// Complex number with [`BigFloat`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        BigComplex { re: BigFloat::from_i64(n), im: BigFloat::zero_with_precision(EXACT) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        BigComplex { re, im: BigFloat::zero_with_precision(prec) }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_real(BigFloat::from_rational(q, prec))
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        BigComplex { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().min(self.im.precision())
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        BigComplex { re: self.re.with_precision(prec), im: self.im.with_precision(prec) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Exact test of `|z| < 2^k`.
    pub fn abs_below_pow2(&self, k: i64) -> bool {
        let n = self.norm_sqr();
        match n.log2_floor() {
            None => true,
            Some(l) => l < 2 * k,
        }
    }

    /// Rough `log2 |z|` for diagnostics; `None` for zero.
    pub fn log2_abs(&self) -> Option<i64> {
        self.norm_sqr().log2_floor().map(|l| l.div_euclid(2))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigComplex::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            let re = &self.re * &rhs.re;
            let prec = re.precision();
            return BigComplex { re, im: BigFloat::zero_with_precision(prec) };
        }
        BigComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        if rhs.im.is_zero() {
            return BigComplex { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        let den = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        BigComplex { re: &re / &den, im: &im / &den }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

forward_owned!(BigComplex, Add, add);
forward_owned!(BigComplex, Sub, sub);
forward_owned!(BigComplex, Mul, mul);
forward_owned!(BigComplex, Div, div);

impl Zero for BigComplex {
    fn zero() -> Self {
        BigComplex { re: BigFloat::zero_with_precision(EXACT), im: BigFloat::zero_with_precision(EXACT) }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for BigComplex {
    fn one() -> Self {
        BigComplex::from_i64(1)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_round_trip_within_precision() {
        for (n, d) in [(1, 3), (-7, 11), (22, 7), (1, 1024), (123456789, 1000)] {
            let x = BigFloat::from_rational(&q(n, d), 128);
            let err = (x.to_rational() - q(n, d)).abs();
            let bound = q(n, d).abs() / BigRational::from_integer(BigInt::one() << 126u32);
            assert!(err <= bound, "{n}/{d}");
        }
    }

    #[test]
    fn exact_integers_stay_exact() {
        let a = BigFloat::from_i64(1 << 40);
        let b = BigFloat::from_i64(3);
        let c = &(&a * &a) + &b;
        assert_eq!(c.precision(), EXACT);
        assert_eq!(c.to_rational(), BigRational::from_integer((BigInt::one() << 80u32) + 3));
    }

    #[test]
    fn precision_is_minimum_of_operands() {
        let a = BigFloat::from_rational(&q(1, 3), 64);
        let b = BigFloat::from_rational(&q(1, 7), 256);
        assert_eq!((&a + &b).precision(), 64);
        assert_eq!((&a * &b).precision(), 64);
        assert_eq!((&b / &BigFloat::from_i64(5)).precision(), 256);
    }

    #[test]
    fn negligible_addend_is_absorbed() {
        let a = BigFloat::from_rational(&q(1, 3), 64);
        let tiny = BigFloat::from_rational(&q(1, 3), 64).with_precision(64);
        let tiny = &tiny / &BigFloat::from_bigint(BigInt::one() << 500u32);
        assert_eq!(&a + &tiny, a);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = BigComplex::new(BigFloat::from_rational(&q(3, 7), 200), BigFloat::from_rational(&q(-5, 9), 200));
        let b = BigComplex::from_f64(0.25, 1.5);
        let back = &(&a * &b) / &b;
        assert!((&back - &a).abs_below_pow2(-190));
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(BigFloat::from_i64(12345).to_sci_string(3), "1.23e4");
        assert_eq!(BigFloat::from_f64(-0.5).to_sci_string(2), "-5.0e-1");
        assert_eq!(BigFloat::from_rational(&q(1, 3), 100).to_sci_string(5), "3.3333e-1");
        assert_eq!(BigFloat::from_i64(0).to_sci_string(5), "0");
    }

    #[test]
    fn f64_conversions() {
        for x in [1.0, -2.5, 1e-300, 3.0e200, 0.1] {
            assert_eq!(BigFloat::from_f64(x).to_f64(), x);
        }
    }
}
