//! Exact rationals and their `"p/q"` text form (`q` omitted when 1).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Continued-fraction reconstruction: the last convergent of `x` whose
/// denominator does not exceed `max_den`.
pub fn best_convergent(x: &BigRational, max_den: &BigInt) -> BigRational {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    if q1.is_zero() {
        // even the first convergent is too fine; fall back to the integer part
        return BigRational::from_integer(x.floor().to_integer());
    }
    BigRational::new(p1, q1)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(to_string(&ratio(6, 4)), "3/2");
        assert_eq!(to_string(&ratio(-4, 2)), "-2");
        assert_eq!(to_string(&int(0)), "0");
        assert_eq!(parse("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn convergents_recover_small_fractions() {
        let pi_ish = ratio(355, 113) + BigRational::new(1.into(), BigInt::from(10).pow(30));
        assert_eq!(best_convergent(&pi_ish, &BigInt::from(1000)), ratio(355, 113));
        assert_eq!(best_convergent(&ratio(7, 6), &BigInt::from(10)), ratio(7, 6));
        assert_eq!(best_convergent(&ratio(-1, 3), &BigInt::from(10)), ratio(-1, 3));
    }
}
