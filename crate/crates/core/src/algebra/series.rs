use super::{Scalar, Var};
use crate::error::{Error, Result};

/// Power series `Σ_{d=0}^{D} c_d v^d + O(v^{D+1})` with dense storage.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T> {
    var: Var,
    coeffs: Vec<T>,
}

impl<T: Scalar> PowerSeries<T> {
    /// Series whose truncation order is `coeffs.len() - 1`.
    pub fn new(var: Var, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a power series stores at least the constant term");
        PowerSeries { var, coeffs }
    }

    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn from_coeffs(var: Var, order: usize, mut coeffs: Vec<T>) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::from_coeffs(var, order, Vec::new())
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::from_coeffs(var, order, vec![T::one()])
    }

    /// The series `v` itself.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::from_coeffs(var, order, vec![T::zero(), T::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `v^d`; zero-extension past the order is refused.
    pub fn coeff(&self, d: usize) -> Result<&T> {
        self.coeffs.get(d).ok_or(Error::Truncated { requested: d as i64, top: self.order() as i64 })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        PowerSeries { var: self.var, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn same_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.var, other.var))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect();
        Ok(PowerSeries { var: self.var, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PowerSeries { var: self.var, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries { var: self.var, coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.mul_ref(b);
                }
            }
        }
        PowerSeries { var: self.var, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var, self.order());
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::SeriesPrecondition("inverse needs a non-zero constant term".into()));
        }
        let inv0 = T::one() / c0.clone();
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for d in 1..self.coeffs.len() {
            let mut acc = T::zero();
            for k in 1..=d {
                if !self.coeffs[k].is_zero() {
                    acc = acc + self.coeffs[k].mul_ref(&out[d - k]);
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(PowerSeries { var: self.var, coeffs: out })
    }

    /// Square root with constant term 1, for a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs[0] != T::one() {
            return Err(Error::SeriesPrecondition("sqrt needs constant term 1".into()));
        }
        let two = T::from_i64(2);
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(T::one());
        for d in 1..self.coeffs.len() {
            let mut acc = self.coeffs[d].clone();
            for i in 1..d {
                acc = acc - out[i].mul_ref(&out[d - i]);
            }
            out.push(acc / two.clone());
        }
        Ok(PowerSeries { var: self.var, coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// `d/dv`; the order drops by one (a constant stays a constant).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.var, 0);
        }
        let coeffs = (1..self.coeffs.len()).map(|d| self.coeffs[d].mul_ref(&T::from_i64(d as i64))).collect();
        PowerSeries { var: self.var, coeffs }
    }

    /// `self(inner(u))` for `inner(0) = 0`; the result lives in `inner`'s
    /// variable with order `min(self.order, inner.order)`.
    pub fn compose(&self, inner: &PowerSeries<T>) -> Result<PowerSeries<T>> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("composition needs inner(0) = 0".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = PowerSeries::from_coeffs(inner.var, order, vec![self.coeffs[order].clone()]);
        for d in (0..order).rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[d].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(v)) = v + O(v^{order+1})`,
    /// by the fixed-point iteration `g ← g − (self(g) − v)`.
    pub fn reversion(&self, order: usize) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("reversion needs f(0) = 0".into()));
        }
        if self.coeffs.get(1) != Some(&T::one()) {
            return Err(Error::SeriesPrecondition("reversion needs f'(0) = 1".into()));
        }
        if order > self.order() {
            return Err(Error::Truncated { requested: order as i64, top: self.order() as i64 });
        }
        let f = self.truncate(order);
        let v = Self::variable(self.var, order);
        let mut g = v.clone();
        // each pass fixes at least one more coefficient
        for _ in 0..order {
            let next = g.sub(&f.compose(&g)?.sub(&v)?)?;
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::BigRational;
    use proptest::prelude::*;

    fn s(coeffs: &[i64], order: usize) -> PowerSeries<BigRational> {
        PowerSeries::from_coeffs(Var::X, order, coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn products() {
        assert_eq!(s(&[1, 1], 4).mul(&s(&[1, -1], 4)).unwrap(), s(&[1, 0, -1], 4));
        assert_eq!(s(&[0, 1], 3).mul(&s(&[0, 1], 3)).unwrap(), s(&[0, 0, 1], 3));
        // (1 + x + x^2 + x^3)(1 - x) = 1 - x^4, invisible at order 3
        assert_eq!(s(&[1, 1, 1, 1], 3).mul(&s(&[1, -1], 3)).unwrap(), s(&[1], 3));
    }

    #[test]
    fn mixed_truncation_takes_the_minimum() {
        let p = s(&[1, 2, 3], 5).mul(&s(&[1, 1], 2)).unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p, s(&[1, 3, 5], 2));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = s(&[1], 2);
        let b = PowerSeries::from_coeffs(Var::Z, 2, vec![int(1)]);
        assert!(matches!(a.mul(&b), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn square_roots() {
        let r = s(&[1, 2, 1], 5).sqrt().unwrap();
        assert_eq!(r, s(&[1, 1], 5));
        assert!(s(&[2, 1], 3).sqrt().is_err());
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(s(&[0, 1], 6).reversion(6).unwrap(), s(&[0, 1], 6));
        // z - z^2: Catalan numbers
        assert_eq!(s(&[0, 1, -1], 6).reversion(6).unwrap(), s(&[0, 1, 1, 2, 5, 14, 42], 6));
        // z - z^3
        assert_eq!(s(&[0, 1, 0, -1], 7).reversion(7).unwrap(), s(&[0, 1, 0, 1, 0, 3, 0, 12], 7));
        assert!(s(&[1, 1], 3).reversion(3).is_err());
        assert!(s(&[0, 2], 3).reversion(3).is_err());
    }

    #[test]
    fn inverse_of_geometric() {
        assert_eq!(s(&[1, -1], 5).inverse().unwrap(), s(&[1, 1, 1, 1, 1, 1], 5));
        assert!(s(&[0, 1], 3).inverse().is_err());
    }

    proptest! {
        #[test]
        fn reversion_round_trip(tail in proptest::collection::vec(-5i64..5, 1..8)) {
            let order = tail.len() + 1;
            let mut c = vec![0, 1];
            c.extend(tail);
            let f = s(&c, order);
            let g = f.reversion(order).unwrap();
            let x = PowerSeries::variable(Var::X, order);
            prop_assert_eq!(f.compose(&g).unwrap(), x.clone());
            prop_assert_eq!(g.compose(&f).unwrap(), x);
        }

        #[test]
        fn rational_field_laws(a in (-20i64..20, 1i64..20), b in (-20i64..20, 1i64..20), c in (-20i64..20, 1i64..20)) {
            let q = |(n, d): (i64, i64)| crate::algebra::rational::ratio(n, d);
            let (a, b, c) = (q(a), q(b), q(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
