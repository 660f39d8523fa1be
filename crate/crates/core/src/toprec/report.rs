use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::expansion::{correlator, CorrelatorExpansion};
use crate::algebra::rational::{best_convergent, to_string};
use crate::algebra::{BigComplex, BigFloat, PowerSeries, Var};
use crate::cutjoin::{closed_form_01, CutJoin};
use crate::error::Result;

/// Sign conventions used by every report below.
pub const CONVENTION: &str = "omega_{0,1} = -y dx, omega_{0,2} = dz1 dz2/(z1-z2)^2, \
K(z1,z) = -(int_o^z omega_{0,2}(z1,.))/((y(z)-y(zbar)) dx(z)) with the base point term dropped; \
coefficients of prod x_i^{mu_i-1} dx_i compared with prod mu_i * H";

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureEntry {
    pub mu: Vec<usize>,
    /// Real part in scientific notation.
    pub tr: String,
    pub tr_imag: String,
    pub cutjoin: String,
    pub abs_err: String,
    /// Estimated numerical error of `tr`.
    pub error_estimate: String,
    pub reconstructed: String,
    pub exact: bool,
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub convention: &'static str,
    pub g: usize,
    pub n: usize,
    pub a: usize,
    pub max_part: usize,
    pub prec: u32,
    /// `log2` of the absolute tolerance.
    pub tolerance_log2: i64,
    pub entries: Vec<ConjectureEntry>,
    pub symmetry_violations: Vec<Vec<usize>>,
    pub divisibility_violations: Vec<Vec<usize>>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.exact && e.within_tolerance)
            && self.symmetry_violations.is_empty()
            && self.divisibility_violations.is_empty()
    }
}

fn l1(z: &BigComplex) -> BigFloat {
    &z.re.abs() + &z.im.abs()
}

/// Compares the TR expansion with `∏μ_i · H` from the cut-and-join engine.
pub fn check_conjecture(
    g: usize,
    n: usize,
    a: usize,
    max_part: usize,
    prec: u32,
    cj: &CutJoin,
) -> Result<ConjectureReport> {
    let expansion = correlator(g, n, a, max_part, prec)?;
    compare(&expansion, cj)
}

/// The comparison half of [`check_conjecture`], for an expansion already at hand.
pub fn compare(e: &CorrelatorExpansion, cj: &CutJoin) -> Result<ConjectureReport> {
    let tol = -(e.prec as i64) / 2;
    let max_den = BigInt::from(10u64.pow(12));
    let mut entries = Vec::new();
    let mut divisibility = Vec::new();
    let mut symmetry = Vec::new();
    for (mu, (v, err)) in &e.entries {
        let total: usize = mu.iter().sum();
        let target = if total.is_multiple_of(e.a) {
            cj.hurwitz(e.a, e.g, mu)? * BigRational::from_integer(mu.iter().product::<usize>().into())
        } else {
            BigRational::zero()
        };
        let diff = l1(&(v - &BigComplex::from_rational(&target, e.prec)));
        let within = diff.abs_below_pow2(tol);
        let rec = best_convergent(&v.re.to_rational(), &max_den);
        let exact = rec == target && v.im.abs_below_pow2(tol);
        if !total.is_multiple_of(e.a) && !l1(v).abs_below_pow2(tol) {
            divisibility.push(mu.clone());
        }
        let mut sorted = mu.clone();
        sorted.sort_unstable();
        if sorted != *mu && !l1(&(v - &e.entries[&sorted].0)).abs_below_pow2(tol) {
            symmetry.push(mu.clone());
        }
        entries.push(ConjectureEntry {
            mu: mu.clone(),
            tr: v.re.to_sci_string(20),
            tr_imag: v.im.to_sci_string(3),
            cutjoin: to_string(&target),
            abs_err: diff.to_sci_string(3),
            error_estimate: err.to_sci_string(3),
            reconstructed: to_string(&rec),
            exact,
            within_tolerance: within,
        });
    }
    Ok(ConjectureReport {
        convention: CONVENTION,
        g: e.g,
        n: e.n,
        a: e.a,
        max_part: e.max_part,
        prec: e.prec,
        tolerance_log2: tol,
        entries,
        symmetry_violations: symmetry,
        divisibility_violations: divisibility,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub a: usize,
    pub order: usize,
    /// `[x^{a−1}] y(1+xy)^a`, expected `−1`.
    pub leading: String,
    /// Exponents below `order` with a nonzero residual.
    pub nonzero: Vec<usize>,
}

impl SpectralReport {
    pub fn passed(&self) -> bool {
        self.nonzero.is_empty() && self.leading == "-1"
    }
}

/// With `y = −F₀₁'(x)`, checks `x^{a−1} + y(1+xy)^a = O(x^order)` exactly.
pub fn check_spectral_from_f01(a: usize, order: usize) -> Result<SpectralReport> {
    if order < a {
        return Err(crate::error::Error::InvalidInput(format!("order {order} below a = {a}")));
    }
    let mut y = vec![BigRational::zero(); order];
    let mut k = 1;
    while a * k <= order {
        // d/dx of H(ak) x^{ak}
        y[a * k - 1] = -closed_form_01(a, k) * BigRational::from_integer((a * k).into());
        k += 1;
    }
    spectral_residual(a, y)
}

fn spectral_residual(a: usize, y: Vec<BigRational>) -> Result<SpectralReport> {
    let order = y.len();
    let top = order - 1;
    let y = PowerSeries::from_coeffs(Var::X, top, y);
    let x = PowerSeries::variable(Var::X, top);
    let one_plus = PowerSeries::one(Var::X, top).add(&x.mul(&y)?)?;
    let rhs = y.mul(&one_plus.pow(a as u32))?;
    let leading = to_string(rhs.coeff(a - 1)?);
    let mut lhs = vec![BigRational::zero(); order];
    lhs[a - 1] = BigRational::one();
    let lhs = PowerSeries::from_coeffs(Var::X, top, lhs);
    let res = lhs.add(&rhs)?;
    let nonzero = (0..order).filter(|&i| !res.coeffs()[i].is_zero()).collect();
    Ok(SpectralReport { a, order, leading, nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_curve_from_genus_zero() {
        for a in 1..=4 {
            let r = check_spectral_from_f01(a, 8).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn spectral_check_detects_a_perturbation() {
        let mut y = vec![BigRational::zero(); 8];
        for k in 1..=4 {
            y[2 * k - 1] = -closed_form_01(2, k) * BigRational::from_integer((2 * k).into());
        }
        assert!(spectral_residual(2, y.clone()).unwrap().passed());
        y[5] += BigRational::one();
        assert_eq!(spectral_residual(2, y).unwrap().nonzero[0], 5);
    }

    #[test]
    fn genus_zero_three_points_a1() {
        let cj = CutJoin::new();
        let r = check_conjecture(0, 3, 1, 4, 256, &cj).unwrap();
        assert!(r.passed(), "{:?}", r.entries.iter().filter(|e| !e.exact).collect::<Vec<_>>());
    }

    #[test]
    fn genus_one_a2() {
        let cj = CutJoin::new();
        let r = check_conjecture(1, 1, 2, 6, 256, &cj).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries[3].cutjoin, "25");
    }

    #[test]
    fn genus_zero_one_point_is_exact() {
        let cj = CutJoin::new();
        let r = check_conjecture(0, 1, 2, 8, 512, &cj).unwrap();
        assert!(r.passed());
        assert!(r.entries.iter().all(|e| e.abs_err == "0"));
    }

    #[test]
    fn doubling_precision_stays_within_the_estimate() {
        let lo = correlator(1, 1, 3, 6, 256).unwrap();
        let hi = correlator(1, 1, 3, 6, 512).unwrap();
        for (mu, (v, err)) in &lo.entries {
            let d = l1(&(v - hi.value(mu).unwrap()));
            assert!(d.to_rational() <= err.to_rational(), "{mu:?}");
        }
    }
}
