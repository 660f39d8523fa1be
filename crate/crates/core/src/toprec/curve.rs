use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::rational::binomial;
use crate::algebra::{BigComplex, BigFloat, PowerSeries, Var};
use crate::error::{Error, Result};

/// `x(z) = z(1 − z^a)`, `y(z) = z^{a−1}/(z^a − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    pub a: usize,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SpectralCurve {
    pub fn new(a: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInput("a must be positive".into()));
        }
        Ok(SpectralCurve { a })
    }

    /// `x(z)` through `z^order`.
    pub fn x_series(&self, order: usize) -> PowerSeries<BigRational> {
        let mut c = vec![BigRational::zero(); order + 1];
        if order >= 1 {
            c[1] = q(1);
        }
        if self.a < order {
            c[self.a + 1] = q(-1);
        }
        PowerSeries::new(Var::Z, c)
    }

    /// `y(z) = −z^{a−1}(1 + z^a + z^{2a} + …)` through `z^order`.
    pub fn y_series(&self, order: usize) -> PowerSeries<BigRational> {
        let mut c = vec![BigRational::zero(); order + 1];
        let mut e = self.a - 1;
        while e <= order {
            c[e] = q(-1);
            e += self.a;
        }
        PowerSeries::new(Var::Z, c)
    }

    /// `z(x)`, the inverse of `x(z)` near 0, through `x^order`.
    pub fn z_of_x(&self, order: usize) -> PowerSeries<BigRational> {
        let g = self.x_series(order).reversion(order).expect("x(0) = 0, x'(0) = 1");
        PowerSeries::new(Var::X, g.into_coeffs())
    }

    /// `1 − (a+1) z^a`, whose zeros are the branch points.
    pub fn ramification(&self, z: &BigComplex) -> BigComplex {
        &BigComplex::one() - &(&BigComplex::from_i64(self.a as i64 + 1) * &z.powi(self.a as u32))
    }

    /// Taylor coefficients of `x(α + w) − x(α)` in `w`, with the linear
    /// coefficient set to zero (α is a branch point).
    pub fn x_at(&self, alpha: &BigComplex) -> Vec<BigComplex> {
        let a = self.a;
        let mut c = vec![BigComplex::zero(); a + 2];
        for (i, slot) in c.iter_mut().enumerate().skip(2) {
            let b = BigComplex::from_real(BigFloat::from_bigint(binomial((a + 1) as u64, i as u64)));
            *slot = -(&b * &alpha.powi((a + 1 - i) as u32));
        }
        c
    }

    /// `x'(α + t)` through `t^order`, constant term set to zero.
    pub fn dx_at(&self, alpha: &BigComplex, order: usize) -> PowerSeries<BigComplex> {
        let x = self.x_at(alpha);
        let mut c = vec![BigComplex::zero(); order + 1];
        for i in 2..x.len() {
            if i - 1 <= order {
                c[i - 1] = &x[i] * &BigComplex::from_i64(i as i64);
            }
        }
        PowerSeries::new(Var::T, c)
    }

    /// `y(α + w)` through `w^order`, for `α^a ≠ 1`.
    pub fn y_at(&self, alpha: &BigComplex, order: usize) -> PowerSeries<BigComplex> {
        let a = self.a as u32;
        let base = PowerSeries::from_coeffs(Var::T, order, vec![alpha.clone(), BigComplex::one()]);
        let num = base.pow(a - 1);
        let den = base.pow(a).sub(&PowerSeries::one(Var::T, order)).expect("same variable");
        num.div(&den).expect("α^a ≠ 1 at a branch point")
    }
}

/// All `a` roots of `1 − (a+1)z^a` at `prec` bits, by Newton's method from
/// double-precision starting points.
pub fn branch_points(a: usize, prec: u32) -> Result<Vec<BigComplex>> {
    let curve = SpectralCurve::new(a)?;
    let rho = (a as f64 + 1.0).powf(-1.0 / a as f64);
    let tol = -(prec as i64) + 8;
    let mut out = Vec::with_capacity(a);
    for j in 0..a {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / a as f64;
        let (mut re, mut im) = (rho * theta.cos(), rho * theta.sin());
        if im.abs() < 1e-300 {
            im = 0.0;
        }
        if re.abs() < 1e-300 {
            re = 0.0;
        }
        let mut z = BigComplex::from_f64(re, im).with_precision(prec);
        let deriv = BigComplex::from_i64(-((a * (a + 1)) as i64));
        let mut converged = false;
        for _ in 0..64 {
            let f = curve.ramification(&z);
            let df = &deriv * &z.powi(a as u32 - 1);
            let step = &f / &df;
            z = &z - &step;
            if step.abs_below_pow2(tol - 4) {
                converged = true;
                break;
            }
        }
        if !converged || !curve.ramification(&z).abs_below_pow2(tol) {
            return Err(Error::PrecisionExhausted(format!("branch point {j} of a={a} did not converge")));
        }
        out.push(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn branch_points_small_a() {
        let b = branch_points(1, 256).unwrap();
        assert_eq!(b.len(), 1);
        assert!((&b[0] - &BigComplex::from_f64(0.5, 0.0)).abs_below_pow2(-240));
        let b = branch_points(2, 256).unwrap();
        // ±3^{-1/2}
        for z in &b {
            let three_z2 = &BigComplex::from_i64(3) * &(z * z);
            assert!((&three_z2 - &BigComplex::one()).abs_below_pow2(-240));
        }
        assert!((&b[0] + &b[1]).abs_below_pow2(-240));
        let b = branch_points(3, 256).unwrap();
        for z in &b {
            let four_z3 = &BigComplex::from_i64(4) * &z.powi(3);
            assert!((&four_z3 - &BigComplex::one()).abs_below_pow2(-240));
        }
    }

    #[test]
    fn series_at_zero() {
        let c = SpectralCurve::new(2).unwrap();
        assert_eq!(c.y_series(5).coeffs(), &[int(0), int(-1), int(0), int(-1), int(0), int(-1)]);
        let z = c.z_of_x(6);
        let back = c.x_series(6).compose(&PowerSeries::new(Var::Z, z.coeffs().to_vec())).unwrap();
        assert_eq!(back.coeffs()[1], int(1));
        assert!(back.coeffs()[2..].iter().all(|c| c.is_zero()));
    }
}
