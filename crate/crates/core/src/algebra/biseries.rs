use super::{LaurentSeries, Scalar, Var};
use crate::error::{Error, Result};

/// Series in `x` truncated at `x^X`, each coefficient a Laurent series in ħ.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeriesXH<T> {
    coeffs: Vec<LaurentSeries<T>>,
}

impl<T: Scalar> BiSeriesXH<T> {
    /// The zero series through `x^x_order`, every ħ-coefficient exact.
    pub fn zero(x_order: usize) -> Self {
        BiSeriesXH { coeffs: vec![LaurentSeries::exact_zero(Var::HBAR); x_order + 1] }
    }

    pub fn one(x_order: usize) -> Self {
        let mut s = Self::zero(x_order);
        s.coeffs[0] = LaurentSeries::monomial(Var::HBAR, 0, T::one());
        s
    }

    pub fn from_coeffs(coeffs: Vec<LaurentSeries<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesPrecondition("a bivariate series needs the x^0 coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.var() != Var::HBAR) {
            return Err(Error::VariableMismatch(c.var(), Var::HBAR));
        }
        Ok(BiSeriesXH { coeffs })
    }

    pub fn x_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> Result<&LaurentSeries<T>> {
        self.coeffs.get(d).ok_or(Error::Truncated { requested: d as i64, top: self.x_order() as i64 })
    }

    pub fn coeffs(&self) -> &[LaurentSeries<T>] {
        &self.coeffs
    }

    pub fn set(&mut self, d: usize, c: LaurentSeries<T>) {
        self.coeffs[d] = c;
    }

    /// Lowest retained ħ-order across all x-degrees.
    pub fn h_top(&self) -> i64 {
        self.coeffs.iter().map(|c| c.top()).min().unwrap_or(i64::MAX)
    }

    /// Forgets every ħ-exponent above `top`.
    pub fn truncate_h(&self, top: i64) -> Self {
        BiSeriesXH { coeffs: self.coeffs.iter().map(|c| c.truncate_top(top)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        BiSeriesXH { coeffs: (0..n).map(|d| self.coeffs[d].add_unchecked(&other.coeffs[d])).collect() }
    }

    pub fn scale_h(&self, c: &LaurentSeries<T>) -> Self {
        BiSeriesXH { coeffs: self.coeffs.iter().map(|x| x.mul_unchecked(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = Self::zero(n - 1);
        for i in 0..n {
            for j in 0..n - i {
                let p = self.coeffs[i].mul_unchecked(&other.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add_unchecked(&p);
            }
        }
        out
    }

    /// `exp(self)` for a series without constant term, through the recurrence
    /// `d·E_d = Σ_{j=1}^{d} j·S_j·E_{d−j}` coming from `E' = S'E`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("exp needs a vanishing x^0 coefficient".into()));
        }
        let n = self.coeffs.len();
        let mut e: Vec<LaurentSeries<T>> = Vec::with_capacity(n);
        e.push(LaurentSeries::monomial(Var::HBAR, 0, T::one()));
        for d in 1..n {
            let mut acc = LaurentSeries::exact_zero(Var::HBAR);
            for j in 1..=d {
                let term = self.coeffs[j].mul_unchecked(&e[d - j]).scale(&T::from_i64(j as i64));
                acc = acc.add_unchecked(&term);
            }
            e.push(acc.scale(&(T::one() / T::from_i64(d as i64))));
        }
        Ok(BiSeriesXH { coeffs: e })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use crate::algebra::BigRational;

    fn h(floor: i64, c: &[BigRational]) -> LaurentSeries<BigRational> {
        LaurentSeries::polynomial(Var::HBAR, floor, c.to_vec())
    }

    #[test]
    fn exp_of_monomial_is_exponential() {
        let mut s = BiSeriesXH::zero(4);
        s.set(1, h(-1, &[int(1)]));
        let e = s.exp().unwrap();
        // exp(x/ħ): x^d/(d! ħ^d)
        assert_eq!(e.coeff(3).unwrap().coeff(-3).unwrap(), ratio(1, 6));
        assert_eq!(e.coeff(4).unwrap().coeff(-4).unwrap(), ratio(1, 24));
        assert_eq!(e.coeff(4).unwrap().coeff(-3).unwrap(), int(0));
    }

    #[test]
    fn exp_is_a_homomorphism() {
        let mut a = BiSeriesXH::zero(5);
        a.set(1, h(-1, &[int(1), int(2)]));
        a.set(2, h(0, &[ratio(1, 2)]));
        let mut b = BiSeriesXH::zero(5);
        b.set(2, h(-2, &[int(3)]));
        b.set(5, h(1, &[int(-1)]));
        assert_eq!(a.add(&b).exp().unwrap(), a.exp().unwrap().mul(&b.exp().unwrap()));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(BiSeriesXH::<BigRational>::one(3).exp().is_err());
    }
}
