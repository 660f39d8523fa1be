use super::{PowerSeries, Scalar, Var};
use crate::error::{Error, Result};

/// Marker for a series known exactly at every exponent (a Laurent polynomial).
pub const EXACT_TOP: i64 = i64::MAX;

fn shift_top(offset: i64, top: i64) -> i64 {
    if top == EXACT_TOP {
        EXACT_TOP
    } else {
        offset.saturating_add(top)
    }
}

/// Laurent series `Σ_{e ≥ floor} c_e v^e`, known through exponent `top`.
///
/// Coefficients are stored from `floor` upwards; exponents between the last
/// stored one and `top` are zero, exponents above `top` are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<T> {
    var: Var,
    floor: i64,
    top: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentSeries<T> {
    pub fn new(var: Var, floor: i64, coeffs: Vec<T>, top: i64) -> Self {
        let mut s = LaurentSeries { var, floor, top, coeffs };
        s.clip();
        s
    }

    /// Series truncated right after its last stored coefficient.
    pub fn truncated(var: Var, floor: i64, coeffs: Vec<T>) -> Self {
        let top = floor + coeffs.len() as i64 - 1;
        LaurentSeries { var, floor, top, coeffs }
    }

    /// Laurent polynomial, exact at every exponent.
    pub fn polynomial(var: Var, floor: i64, coeffs: Vec<T>) -> Self {
        LaurentSeries { var, floor, top: EXACT_TOP, coeffs }
    }

    pub fn monomial(var: Var, exponent: i64, c: T) -> Self {
        Self::polynomial(var, exponent, vec![c])
    }

    pub fn exact_zero(var: Var) -> Self {
        Self::polynomial(var, 0, Vec::new())
    }

    /// Zero known through `top`.
    pub fn zero(var: Var, top: i64) -> Self {
        LaurentSeries { var, floor: top + 1, top, coeffs: Vec::new() }
    }

    pub fn from_power_series(p: &PowerSeries<T>) -> Self {
        Self::truncated(p.var(), 0, p.coeffs().to_vec())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn is_exact(&self) -> bool {
        self.top == EXACT_TOP
    }

    pub fn stored(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.floor + i as i64, c))
    }

    fn clip(&mut self) {
        if self.top != EXACT_TOP {
            let keep = (self.top - self.floor + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
    }

    /// Coefficient of `v^e`.
    pub fn coeff(&self, e: i64) -> Result<T> {
        if e > self.top {
            return Err(Error::Truncated { requested: e, top: self.top });
        }
        if e < self.floor {
            return Ok(T::zero());
        }
        Ok(self.coeffs.get((e - self.floor) as usize).cloned().unwrap_or_else(T::zero))
    }

    /// Coefficient of `v^{-1}`.
    pub fn residue(&self) -> Result<T> {
        self.coeff(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent and value of the first non-zero stored coefficient.
    pub fn leading(&self) -> Option<(i64, &T)> {
        self.stored().find(|(_, c)| !c.is_zero())
    }

    /// Drops leading zero coefficients, raising the floor.
    pub fn trim(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.floor += lead as i64;
        self
    }

    /// Forgets everything above exponent `top`.
    pub fn truncate_top(&self, top: i64) -> Self {
        let mut s = self.clone();
        s.top = s.top.min(top);
        s.clip();
        s
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { var: self.var, floor: self.floor + k, top: shift_top(k, self.top), coeffs: self.coeffs.clone() }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            var: self.var,
            floor: self.floor,
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        LaurentSeries {
            var: self.var,
            floor: self.floor,
            top: self.top,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
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
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.truncate_top(self.top);
        }
        if other.coeffs.is_empty() {
            return self.truncate_top(other.top);
        }
        let floor = self.floor.min(other.floor);
        let top = self.top.min(other.top);
        let end = (self.floor + self.coeffs.len() as i64).max(other.floor + other.coeffs.len() as i64);
        let end = if top == EXACT_TOP { end } else { end.min(top + 1) };
        let mut coeffs = vec![T::zero(); (end - floor).max(0) as usize];
        for src in [self, other] {
            for (e, c) in src.stored() {
                if e < end {
                    let slot = &mut coeffs[(e - floor) as usize];
                    *slot = slot.clone() + c.clone();
                }
            }
        }
        LaurentSeries { var: self.var, floor, top, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let floor = self.floor + other.floor;
        let top = shift_top(self.floor, other.top).min(shift_top(other.floor, self.top));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return LaurentSeries { var: self.var, floor, top, coeffs: Vec::new() };
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if top != EXACT_TOP {
            len = len.min((top - floor + 1).max(0) as usize);
        }
        let mut coeffs = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.mul_ref(b);
                }
            }
        }
        LaurentSeries { var: self.var, floor, top, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::monomial(self.var, 0, T::one());
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Multiplicative inverse known through exponent `min(top, what self determines)`.
    pub fn invert(&self, top: i64) -> Result<Self> {
        let (v, lead) = self.leading().ok_or(Error::ZeroInverse)?;
        let lead_inv = T::one() / lead.clone();
        let rel: Vec<T> = self.coeffs[(v - self.floor) as usize..].to_vec();
        let known_rel = shift_top(-v, self.top);
        let out_top = top.min(shift_top(-v, known_rel));
        let n = (out_top + v + 1).max(0) as usize;
        let mut out: Vec<T> = Vec::with_capacity(n);
        for d in 0..n {
            if d == 0 {
                out.push(lead_inv.clone());
                continue;
            }
            let mut acc = T::zero();
            for k in 1..=d.min(rel.len().saturating_sub(1)) {
                if !rel[k].is_zero() {
                    acc = acc + rel[k].mul_ref(&out[d - k]);
                }
            }
            out.push(-(acc * lead_inv.clone()));
        }
        Ok(LaurentSeries { var: self.var, floor: -v, top: out_top, coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::BigRational;
    use proptest::prelude::*;

    fn poly(floor: i64, c: &[i64]) -> LaurentSeries<BigRational> {
        LaurentSeries::polynomial(Var::HBAR, floor, c.iter().map(|&x| int(x)).collect())
    }

    fn expect(s: &LaurentSeries<BigRational>, lo: i64, c: &[i64]) {
        for (i, &x) in c.iter().enumerate() {
            assert_eq!(s.coeff(lo + i as i64).unwrap(), int(x), "exponent {}", lo + i as i64);
        }
    }

    #[test]
    fn geometric_inverse() {
        let inv = poly(0, &[1, -1]).invert(5).unwrap();
        assert_eq!(inv.top(), 5);
        expect(&inv, 0, &[1, 1, 1, 1, 1, 1]);
        assert!(inv.coeff(6).is_err());
    }

    #[test]
    fn inverse_of_monomial_pole() {
        let inv = poly(-1, &[1]).invert(4).unwrap();
        expect(&inv, -3, &[0, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn stirling_generating_function() {
        let u = poly(0, &[1, -1]).mul(&poly(0, &[1, -2])).unwrap();
        let inv = u.invert(3).unwrap();
        expect(&inv, 0, &[1, 3, 7, 15]);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(poly(0, &[0, 0]).invert(3), Err(Error::ZeroInverse)));
    }

    #[test]
    fn residues() {
        assert_eq!(poly(-1, &[1]).residue().unwrap(), int(1));
        assert_eq!(poly(-2, &[1, 5, 3]).residue().unwrap(), int(5));
        let sq = poly(-1, &[1, 1]).pow(2);
        assert_eq!(sq.residue().unwrap(), int(2));
    }

    #[test]
    fn truncation_propagates_through_products() {
        let a = LaurentSeries::truncated(Var::HBAR, -1, vec![int(1), int(2), int(3)]); // top 1
        let b = poly(-2, &[1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.floor(), -3);
        assert_eq!(p.top(), -1);
        assert!(p.coeff(0).is_err());
        assert_eq!(p.residue().unwrap(), int(3));
    }

    proptest! {
        #[test]
        fn invert_round_trip(floor in -3i64..3, c in proptest::collection::vec(-4i64..5, 1..7)) {
            prop_assume!(c[0] != 0);
            let u = LaurentSeries::truncated(Var::HBAR, floor, c.iter().map(|&x| int(x)).collect());
            let inv = u.invert(20).unwrap();
            let one = u.mul(&inv).unwrap();
            prop_assert_eq!(one.top(), c.len() as i64 - 1);
            for e in 0..=one.top() {
                prop_assert_eq!(one.coeff(e).unwrap(), if e == 0 { int(1) } else { int(0) });
            }
        }
    }
}
