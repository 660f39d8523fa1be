use super::{PowerSeries, Scalar, Var};
use crate::error::{Error, Result};

/// Dense series in `n` variables, each truncated at degree `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<T> {
    vars: Vec<Var>,
    order: usize,
    data: Vec<T>,
}

impl<T: Scalar> MultiSeries<T> {
    pub fn zero(vars: Vec<Var>, order: usize) -> Self {
        let size = (order + 1).pow(vars.len() as u32);
        MultiSeries { vars, order, data: vec![T::zero(); size] }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    fn offset(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.vars.len() {
            return Err(Error::InvalidInput(format!("expected {} indices, got {}", self.vars.len(), idx.len())));
        }
        let mut off = 0;
        for &i in idx {
            if i > self.order {
                return Err(Error::Truncated { requested: i as i64, top: self.order as i64 });
            }
            off = off * (self.order + 1) + i;
        }
        Ok(off)
    }

    fn index_of(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.vars.len()];
        for slot in idx.iter_mut().rev() {
            *slot = off % (self.order + 1);
            off /= self.order + 1;
        }
        idx
    }

    pub fn coeff(&self, idx: &[usize]) -> Result<&T> {
        Ok(&self.data[self.offset(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], c: T) -> Result<()> {
        let off = self.offset(idx)?;
        self.data[off] = c;
        Ok(())
    }

    /// All (multi-index, coefficient) pairs in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &T)> {
        self.data.iter().enumerate().map(move |(o, c)| (self.index_of(o), c))
    }

    /// `f_1(v_1)·…·f_n(v_n)`.
    pub fn tensor(factors: &[PowerSeries<T>]) -> Self {
        let vars = factors.iter().map(|f| f.var()).collect();
        let order = factors.iter().map(|f| f.order()).min().unwrap_or(0);
        let mut out = Self::zero(vars, order);
        for o in 0..out.data.len() {
            let idx = out.index_of(o);
            let mut acc = T::one();
            for (f, &i) in factors.iter().zip(&idx) {
                acc = acc.mul_ref(&f.coeffs()[i]);
            }
            out.data[o] = acc;
        }
        out
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        for (a, b) in self.vars.iter().zip(&other.vars) {
            if a != b {
                return Err(Error::VariableMismatch(*a, *b));
            }
        }
        if self.vars.len() != other.vars.len() || self.order != other.order {
            return Err(Error::InvalidInput("multi-series shapes differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(MultiSeries { vars: self.vars.clone(), order: self.order, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.vars.clone(), self.order);
        for (i, a) in self.entries() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.entries() {
                if b.is_zero() {
                    continue;
                }
                let k: Vec<usize> = i.iter().zip(&j).map(|(x, y)| x + y).collect();
                if k.iter().all(|&d| d <= self.order) {
                    let off = out.offset(&k)?;
                    out.data[off] = out.data[off].clone() + a.mul_ref(b);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients with the variables permuted: result[idx] = self[idx ∘ perm].
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for o in 0..self.data.len() {
            let idx = self.index_of(o);
            let src: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.data[o] = self.data[self.offset(&src).expect("in range")].clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::BigRational;

    fn s(v: Var, c: &[i64]) -> PowerSeries<BigRational> {
        PowerSeries::from_coeffs(v, c.len() - 1, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn tensor_and_product() {
        let z1 = Var('1');
        let z2 = Var('2');
        let a = MultiSeries::tensor(&[s(z1, &[1, 1, 0]), s(z2, &[1, 0, 0])]);
        let b = MultiSeries::tensor(&[s(z1, &[1, 0, 0]), s(z2, &[1, 1, 0])]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(&[1, 1]).unwrap(), &int(1));
        assert_eq!(p.coeff(&[2, 0]).unwrap(), &int(0));
        assert!(p.coeff(&[3, 0]).is_err());
        let q = a.mul(&a).unwrap();
        assert_eq!(q.coeff(&[2, 0]).unwrap(), &int(1));
        assert_eq!(q.coeff(&[1, 0]).unwrap(), &int(2));
    }

    #[test]
    fn permutation_swaps_axes() {
        let mut m = MultiSeries::<BigRational>::zero(vec![Var('1'), Var('2')], 2);
        m.set(&[2, 1], int(7)).unwrap();
        let p = m.permuted(&[1, 0]);
        assert_eq!(p.coeff(&[1, 2]).unwrap(), &int(7));
        assert_eq!(p.coeff(&[2, 1]).unwrap(), &int(0));
    }
}
