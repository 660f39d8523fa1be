use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::curve::SpectralCurve;
use super::recursion::{Omega, Recursion};
use crate::algebra::{BigComplex, BigFloat, PowerSeries, Var};
use crate::error::{Error, Result};

/// Coefficients `c[μ]` of `ω_{g,n} = Σ c[μ] ∏ x_i^{μ_i−1} dx_i`, `1 ≤ μ_i ≤ M`.
#[derive(Clone, Debug)]
pub struct CorrelatorExpansion {
    pub g: usize,
    pub n: usize,
    pub a: usize,
    pub max_part: usize,
    pub prec: u32,
    pub entries: BTreeMap<Vec<usize>, (BigComplex, BigFloat)>,
}

impl CorrelatorExpansion {
    pub fn value(&self, mu: &[usize]) -> Option<&BigComplex> {
        self.entries.get(mu).map(|(v, _)| v)
    }

    pub fn error(&self, mu: &[usize]) -> Option<&BigFloat> {
        self.entries.get(mu).map(|(_, e)| e)
    }
}

/// All tuples in `[1, M]^n`.
pub fn grid(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=max_part).map(move |m| {
                    let mut q = p.clone();
                    q.push(m);
                    q
                })
            })
            .collect();
    }
    out
}

/// `z'(x)(z(x) − α)^{−k}` through `x^{M−1}`.
fn basis_in_x(
    alpha: &BigComplex,
    k: usize,
    z: &PowerSeries<BigComplex>,
    dz: &PowerSeries<BigComplex>,
) -> Result<PowerSeries<BigComplex>> {
    let order = dz.order();
    let base = PowerSeries::from_coeffs(Var::X, order, vec![-alpha, BigComplex::one()]);
    let p = base.inverse()?.pow(k as u32);
    p.compose(&z.truncate(order))?.mul(dz)
}

fn complex_series(p: &PowerSeries<BigRational>, prec: u32) -> PowerSeries<BigComplex> {
    PowerSeries::new(p.var(), p.coeffs().iter().map(|c| BigComplex::from_rational(c, prec)).collect())
}

/// x-expansion of a stable `ω_{g,n}` at `z_i → 0`.
fn expand(
    omega: &Omega,
    alphas: &[BigComplex],
    curve: &SpectralCurve,
    max_part: usize,
    prec: u32,
) -> Result<BTreeMap<Vec<usize>, BigComplex>> {
    let z = complex_series(&curve.z_of_x(max_part), prec);
    let dz = z.derivative().truncate(max_part - 1);
    let mut basis: BTreeMap<(u8, u8), PowerSeries<BigComplex>> = BTreeMap::new();
    for idx in omega.terms.keys() {
        for &(j, k) in idx {
            if let std::collections::btree_map::Entry::Vacant(e) = basis.entry((j, k)) {
                e.insert(basis_in_x(&alphas[j as usize], k as usize, &z, &dz)?);
            }
        }
    }
    let mut out = BTreeMap::new();
    for mu in grid(omega.n, max_part) {
        let mut acc = BigComplex::zero();
        for (idx, c) in &omega.terms {
            let mut t = c.clone();
            for (i, ix) in idx.iter().enumerate() {
                t = &t * &basis[ix].coeffs()[mu[i] - 1];
            }
            acc = &acc + &t;
        }
        out.insert(mu, acc);
    }
    Ok(out)
}

/// `ω_{0,1} = −y dx` in `x`: exact, `c[μ] = [x^{μ−1}](−y(z(x)))`.
pub fn omega01_exact(a: usize, max_part: usize) -> Result<Vec<BigRational>> {
    let curve = SpectralCurve::new(a)?;
    let z = curve.z_of_x(max_part);
    let y = curve.y_series(max_part);
    let yx = y.compose(&PowerSeries::new(Var::Z, z.coeffs().to_vec()))?;
    Ok(yx.coeffs()[..max_part].iter().map(|c| -c.clone()).collect())
}

fn modulus_bound(z: &BigComplex) -> BigFloat {
    // |re| + |im| ≥ |z|
    &z.re.abs() + &z.im.abs()
}

/// Expansion of `ω_{g,n}` through `μ_i ≤ M` at `prec` bits. Errors are
/// estimated by repeating the computation 64 bits lower.
pub fn correlator(g: usize, n: usize, a: usize, max_part: usize, prec: u32) -> Result<CorrelatorExpansion> {
    if (g, n) == (0, 2) || n == 0 {
        return Err(Error::UnstableCorrelator { g, n });
    }
    if max_part == 0 {
        return Err(Error::InvalidInput("M must be positive".into()));
    }
    if (g, n) == (0, 1) {
        let c = omega01_exact(a, max_part)?;
        let entries = c
            .iter()
            .enumerate()
            .map(|(i, q)| (vec![i + 1], (BigComplex::from_rational(q, prec), BigFloat::zero_with_precision(prec))))
            .collect();
        return Ok(CorrelatorExpansion { g, n, a, max_part, prec, entries });
    }
    if prec < 128 {
        return Err(Error::InvalidInput("numeric correlators need at least 128 bits".into()));
    }
    let chi = 2 * g + n - 2;
    let run = |p: u32| -> Result<BTreeMap<Vec<usize>, BigComplex>> {
        let mut r = Recursion::new(a, p, chi)?;
        let alphas = r.alphas.clone();
        let curve = r.curve;
        let w = r.omega(g, n)?;
        expand(w, &alphas, &curve, max_part, p)
    };
    let fine = run(prec)?;
    let coarse = run(prec - 64)?;
    let floor =
        BigFloat::from_rational(&BigRational::new(1.into(), num_bigint::BigInt::one() << (prec as usize - 16)), 64);
    let entries = fine
        .into_iter()
        .map(|(mu, v)| {
            let diff = modulus_bound(&(&v - &coarse[&mu]));
            let scale = &BigFloat::from_i64(1) + &modulus_bound(&v);
            let err = &diff + &(&floor * &scale).with_precision(64);
            (mu, (v, err.with_precision(64)))
        })
        .collect();
    Ok(CorrelatorExpansion { g, n, a, max_part, prec, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::cutjoin::closed_form_01;

    #[test]
    fn omega01_matches_closed_form() {
        for a in 1..=4 {
            let c = omega01_exact(a, 4 * a).unwrap();
            for (i, v) in c.iter().enumerate() {
                let mu = i + 1;
                let want = if mu % a == 0 { closed_form_01(a, mu / a) * int(mu as i64) } else { int(0) };
                assert_eq!(*v, want, "a={a} μ={mu}");
            }
        }
    }

    #[test]
    fn unstable_is_rejected() {
        assert!(matches!(correlator(0, 2, 1, 3, 256), Err(Error::UnstableCorrelator { .. })));
    }
}
