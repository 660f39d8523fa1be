use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::curve::SpectralCurve;
use crate::algebra::{BigComplex, LaurentSeries, PowerSeries, Var};
use crate::error::{Error, Result};

pub(crate) type Local = LaurentSeries<BigComplex>;

/// The local Galois conjugate `s̄(s)` at the branch point `α`:
/// `x(α + s̄) = x(α + s)`, `s̄ = −s + O(s²)`, through `s^order`.
///
/// Writing `x(α+w) − x(α) = c₂w²u(w)` with `u(0) = 1`, the map
/// `φ(w) = w√u(w)` turns the equation into `φ(s̄) = −φ(s)`.
pub fn local_conjugate(curve: &SpectralCurve, alpha: &BigComplex, order: usize) -> Result<PowerSeries<BigComplex>> {
    let x = curve.x_at(alpha);
    let c2 = x[2].clone();
    if c2.is_zero() {
        return Err(Error::PrecisionExhausted("branch point is not simple".into()));
    }
    let mut u = vec![BigComplex::zero(); order + 1];
    u[0] = BigComplex::one();
    for (i, slot) in u.iter_mut().enumerate().skip(1) {
        if i + 2 < x.len() {
            *slot = &x[i + 2] / &c2;
        }
    }
    let root = PowerSeries::new(Var::T, u).sqrt()?;
    let mut phi = vec![BigComplex::zero()];
    phi.extend(root.coeffs()[..order].iter().cloned());
    let phi = PowerSeries::new(Var::T, phi);
    let psi = phi.reversion(order)?;
    psi.compose(&phi.neg())
}

/// `x(α + s̄(s)) − x(α + s)` through `s^order`.
pub fn conjugate_residual(
    curve: &SpectralCurve,
    alpha: &BigComplex,
    sbar: &PowerSeries<BigComplex>,
) -> PowerSeries<BigComplex> {
    let x = curve.x_at(alpha);
    let mut c = vec![BigComplex::zero(); sbar.order() + 1];
    for (i, xi) in x.iter().enumerate() {
        if i <= sbar.order() {
            c[i] = xi.clone();
        }
    }
    let xs = PowerSeries::new(Var::T, c);
    let s = PowerSeries::variable(Var::T, sbar.order());
    xs.compose(sbar).and_then(|l| l.sub(&xs.compose(&s)?)).expect("zero constant terms")
}

/// Local expansions at one branch point in the coordinate `t = z − α`.
pub(crate) struct BranchFrame {
    pub index: usize,
    pub sbar: PowerSeries<BigComplex>,
    /// `−1/((y(z) − y(z̄)) x'(z))`, a double pole.
    pub kernel: Local,
    /// `ω_{0,2}(z, z̄)/(dt)²`.
    pub omega02_conj: Local,
    /// `(z − α_j)^{−k}` and `s̄'(t)(z̄ − α_j)^{−k}`, keyed by `(j, k, conjugate)`.
    basis: FxHashMap<(usize, usize, bool), Local>,
    /// `s̄^m s̄'`.
    sbar_powers: Vec<Local>,
}

fn laurent(p: &PowerSeries<BigComplex>) -> Local {
    LaurentSeries::from_power_series(&PowerSeries::new(Var::T, p.coeffs().to_vec()))
}

impl BranchFrame {
    pub fn new(
        curve: &SpectralCurve,
        alphas: &[BigComplex],
        index: usize,
        order: usize,
        max_pole: usize,
    ) -> Result<Self> {
        let alpha = &alphas[index];
        let sbar = local_conjugate(curve, alpha, order)?;
        let dsbar = sbar.derivative();
        let lsbar = laurent(&sbar);
        let ldsbar = laurent(&dsbar);

        // kernel: Δy and x' both vanish at t = 0
        let y = curve.y_at(alpha, order);
        let mut dy = y.sub(&y.compose(&sbar)?)?.into_coeffs();
        dy[0] = BigComplex::zero();
        let mut dx = curve.dx_at(alpha, order).into_coeffs();
        dx[0] = BigComplex::zero();
        let mut d = PowerSeries::new(Var::T, dy).mul(&PowerSeries::new(Var::T, dx))?.into_coeffs();
        d[1] = BigComplex::zero();
        let kernel = laurent(&PowerSeries::new(Var::T, d)).invert(order as i64)?.neg();

        let t_minus = PowerSeries::variable(Var::T, order).sub(&sbar)?;
        let inv = laurent(&t_minus).invert(order as i64)?;
        let omega02_conj = inv.mul(&inv)?.mul(&ldsbar)?;

        let mut basis = FxHashMap::default();
        let sbar_inv = lsbar.invert(order as i64)?;
        for (j, beta) in alphas.iter().enumerate() {
            for k in 1..=max_pole {
                if j == index {
                    basis.insert((j, k, false), LaurentSeries::monomial(Var::T, -(k as i64), BigComplex::one()));
                    basis.insert((j, k, true), sbar_inv.pow(k as u32).mul(&ldsbar)?);
                } else {
                    let shift = alpha - beta;
                    let base = PowerSeries::from_coeffs(Var::T, order, vec![shift, BigComplex::one()]);
                    let p = base.inverse()?.pow(k as u32);
                    basis.insert((j, k, false), laurent(&p));
                    basis.insert((j, k, true), laurent(&p.compose(&sbar)?).mul(&ldsbar)?);
                }
            }
        }
        let mut sbar_powers = Vec::with_capacity(order + 1);
        let mut acc = LaurentSeries::monomial(Var::T, 0, BigComplex::one());
        for _ in 0..=order {
            sbar_powers.push(acc.mul(&ldsbar)?);
            acc = acc.mul(&lsbar)?;
        }
        Ok(BranchFrame { index, sbar, kernel, omega02_conj, basis, sbar_powers })
    }

    pub fn basis(&self, branch: usize, pole: usize, conj: bool) -> Result<&Local> {
        self.basis
            .get(&(branch, pole, conj))
            .ok_or_else(|| Error::PrecisionExhausted(format!("pole order {pole} beyond the prepared local expansions")))
    }

    /// `(m+1) t^m` or `(m+1) s̄^m s̄'`: the coefficient of `dz_i/(z_i − α)^{m+2}`
    /// in `ω_{0,2}(z, z_i)` or `ω_{0,2}(z̄, z_i)`.
    pub fn omega02_spectator(&self, m: usize, conj: bool) -> Option<Local> {
        let c = BigComplex::from_i64(m as i64 + 1);
        if conj {
            self.sbar_powers.get(m).map(|s| s.scale(&c))
        } else {
            Some(LaurentSeries::monomial(Var::T, m as i64, c))
        }
    }

    pub fn max_spectator(&self) -> usize {
        self.sbar_powers.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toprec::curve::branch_points;

    #[test]
    fn parabola_conjugate_is_reflection() {
        let c = SpectralCurve::new(1).unwrap();
        let alpha = &branch_points(1, 200).unwrap()[0];
        let s = local_conjugate(&c, alpha, 8).unwrap();
        assert!((&s.coeffs()[1] + &BigComplex::one()).abs_below_pow2(-190));
        assert!(s.coeffs()[2..].iter().all(|x| x.abs_below_pow2(-190)));
    }

    #[test]
    fn conjugate_is_an_involution() {
        for a in 1..=4 {
            let c = SpectralCurve::new(a).unwrap();
            for alpha in branch_points(a, 300).unwrap() {
                let s = local_conjugate(&c, &alpha, 12).unwrap();
                assert!((&s.coeffs()[1] + &BigComplex::one()).abs_below_pow2(-280));
                let twice = s.compose(&s).unwrap();
                assert!((&twice.coeffs()[1] - &BigComplex::one()).abs_below_pow2(-250));
                assert!(twice.coeffs()[2..].iter().all(|x| x.abs_below_pow2(-250)), "a={a}");
                let r = conjugate_residual(&c, &alpha, &s);
                assert!(r.coeffs().iter().all(|x| x.abs_below_pow2(-250)));
            }
        }
    }
}
