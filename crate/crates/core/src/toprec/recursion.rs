//! The recursion itself. A stable `ω_{g,n}` is stored as a finite sum
//! `Σ c · ∏_i dz_i/(z_i − α_{j_i})^{k_i}` over the branch points; residues are
//! taken in the local coordinate of each branch point.
//!
//! The kernel uses `∫_o^z ω_{0,2}(z₁, ·) = dz₁/(z₁ − z) − dz₁/(z₁ − o)`; the
//! second part is even under `z ↔ z̄` against an odd denominator and leaves
//! no residue, so the base point is dropped.

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::curve::{branch_points, SpectralCurve};
use super::frame::{BranchFrame, Local};
use crate::algebra::{BigComplex, PowerSeries, Var};
use crate::error::{Error, Result};

/// Per variable: (branch point index, pole order).
pub type Index = (u8, u8);

#[derive(Clone, Debug)]
pub struct Omega {
    pub g: usize,
    pub n: usize,
    pub terms: FxHashMap<Vec<Index>, BigComplex>,
}

impl Omega {
    pub fn max_pole(&self) -> usize {
        self.terms.keys().flat_map(|k| k.iter().map(|&(_, p)| p as usize)).max().unwrap_or(0)
    }
}

/// Pole order bound `6g − 4 + 2n` per variable.
pub fn pole_bound(g: usize, n: usize) -> usize {
    6 * g + 2 * n - 4
}

pub struct Recursion {
    pub curve: SpectralCurve,
    pub prec: u32,
    pub alphas: Vec<BigComplex>,
    frames: Vec<BranchFrame>,
    omegas: FxHashMap<(usize, usize), Omega>,
    max_chi: usize,
}

fn chi(g: usize, n: usize) -> i64 {
    2 * g as i64 - 2 + n as i64
}

type Partial = Vec<(usize, Index)>;

impl Recursion {
    /// Prepares frames good for every `(g, n)` with `2g − 2 + n ≤ max_chi`.
    pub fn new(a: usize, prec: u32, max_chi: usize) -> Result<Self> {
        if prec < 64 {
            return Err(Error::InvalidInput("precision below 64 bits".into()));
        }
        let curve = SpectralCurve::new(a)?;
        let alphas = branch_points(a, prec)?;
        let max_pole = 3 * max_chi + 1;
        let order = 2 * max_pole + 6;
        let frames =
            (0..a).map(|i| BranchFrame::new(&curve, &alphas, i, order, max_pole)).collect::<Result<Vec<_>>>()?;
        Ok(Recursion { curve, prec, alphas, frames, omegas: FxHashMap::default(), max_chi })
    }

    pub fn frames(&self) -> usize {
        self.frames.len()
    }

    /// Largest `log2` deviation, over all frames, of `s̄∘s̄ − id` and of
    /// `x(α + s̄) − x(α + s)`; `None` when everything is exactly zero.
    pub fn frame_defect_log2(&self) -> Result<Option<i64>> {
        let mut worst: Option<i64> = None;
        for f in &self.frames {
            let twice = f.sbar.compose(&f.sbar)?;
            let id = PowerSeries::variable(Var::T, twice.order());
            let res = super::frame::conjugate_residual(&self.curve, &self.alphas[f.index], &f.sbar);
            for c in twice.sub(&id)?.coeffs().iter().chain(res.coeffs()) {
                worst = worst.max(c.log2_abs());
            }
        }
        Ok(worst)
    }

    /// `ω_{g,n}` for `2g − 2 + n > 0`.
    pub fn omega(&mut self, g: usize, n: usize) -> Result<&Omega> {
        if n == 0 || chi(g, n) <= 0 {
            return Err(Error::UnstableCorrelator { g, n });
        }
        if chi(g, n) > self.max_chi as i64 {
            return Err(Error::InvalidInput(format!("({g},{n}) beyond the prepared Euler characteristic")));
        }
        if !self.omegas.contains_key(&(g, n)) {
            if g >= 1 && chi(g - 1, n + 1) > 0 {
                self.omega(g - 1, n + 1)?;
            }
            for g1 in 0..=g {
                for k in 0..n {
                    if chi(g1, k + 1) > 0 && (g1, k + 1) != (g, n) {
                        self.omega(g1, k + 1)?;
                    }
                }
            }
            let w = self.compute(g, n)?;
            let bound = pole_bound(g, n);
            let tol = -(self.prec as i64) / 2;
            let worst = w
                .terms
                .iter()
                .filter(|(_, c)| !c.abs_below_pow2(tol))
                .flat_map(|(k, _)| k.iter().map(|&(_, p)| p as usize))
                .max()
                .unwrap_or(0);
            if worst > bound {
                return Err(Error::PrecisionExhausted(format!("ω_{{{g},{n}}} has a pole of order {worst} > {bound}")));
            }
            self.omegas.insert((g, n), w);
        }
        Ok(&self.omegas[&(g, n)])
    }

    /// Local form of `ω_{g',|vars|+1}(z or z̄, z_vars)` at `frame`, grouped by
    /// the spectator indices.
    fn local_form(&self, frame: &BranchFrame, g: usize, vars: &[usize], conj: bool) -> Result<Vec<(Partial, Local)>> {
        if g == 0 && vars.len() == 1 {
            let mut out = Vec::new();
            for m in 0..=frame.max_spectator() {
                let s = frame.omega02_spectator(m, conj).expect("within range");
                out.push((vec![(vars[0], (frame.index as u8, (m + 2) as u8))], s));
            }
            return Ok(out);
        }
        let w = &self.omegas[&(g, vars.len() + 1)];
        let mut grouped: FxHashMap<Vec<Index>, Local> = FxHashMap::default();
        for (idx, c) in &w.terms {
            let s = frame.basis(idx[0].0 as usize, idx[0].1 as usize, conj)?.scale(c);
            let key = idx[1..].to_vec();
            match grouped.get_mut(&key) {
                Some(acc) => *acc = acc.add(&s)?,
                None => {
                    grouped.insert(key, s);
                }
            }
        }
        Ok(grouped.into_iter().map(|(k, s)| (vars.iter().copied().zip(k).collect(), s)).collect())
    }

    fn compute(&self, g: usize, n: usize) -> Result<Omega> {
        let spect: Vec<usize> = (0..n - 1).collect();
        let mut terms: FxHashMap<Vec<Index>, BigComplex> = FxHashMap::default();
        for frame in &self.frames {
            let mut bracket: FxHashMap<Vec<Index>, Local> = FxHashMap::default();
            let mut add = |key: Vec<Index>, s: Local| -> Result<()> {
                // the kernel has a double pole; nothing above t¹ matters
                let s = s.truncate_top(1);
                match bracket.get_mut(&key) {
                    Some(acc) => *acc = acc.add(&s)?,
                    None => {
                        bracket.insert(key, s);
                    }
                }
                Ok(())
            };

            if g >= 1 {
                if (g - 1, n + 1) == (0, 2) {
                    add(Vec::new(), frame.omega02_conj.clone())?;
                } else {
                    let w = &self.omegas[&(g - 1, n + 1)];
                    for (idx, c) in &w.terms {
                        let l = frame.basis(idx[0].0 as usize, idx[0].1 as usize, false)?;
                        let r = frame.basis(idx[1].0 as usize, idx[1].1 as usize, true)?;
                        if l.floor() + r.floor() > 1 {
                            continue;
                        }
                        add(idx[2..].to_vec(), l.mul(r)?.scale(c))?;
                    }
                }
            }

            for g1 in 0..=g {
                let g2 = g - g1;
                for mask in 0u32..(1 << spect.len()) {
                    let (i_set, j_set): (Vec<usize>, Vec<usize>) = spect.iter().partition(|&&s| mask >> s & 1 == 1);
                    if chi(g1, i_set.len() + 1) < 0 || chi(g2, j_set.len() + 1) < 0 {
                        continue;
                    }
                    let left = self.local_form(frame, g1, &i_set, false)?;
                    let right = self.local_form(frame, g2, &j_set, true)?;
                    for (kl, sl) in &left {
                        for (kr, sr) in &right {
                            if sl.floor() + sr.floor() > 1 {
                                continue;
                            }
                            let mut key = vec![(0u8, 0u8); n - 1];
                            for &(v, ix) in kl.iter().chain(kr.iter()) {
                                key[v] = ix;
                            }
                            add(key, sl.mul(sr)?)?;
                        }
                    }
                }
            }

            for (key, b) in bracket {
                let p = frame.kernel.mul(&b)?;
                let mut m = 0i64;
                while -1 - m >= p.floor() {
                    let c = p.coeff(-1 - m).map_err(|e| Error::PrecisionExhausted(e.to_string()))?;
                    if !c.is_zero() {
                        let mut idx = Vec::with_capacity(n);
                        idx.push((frame.index as u8, (m + 1) as u8));
                        idx.extend_from_slice(&key);
                        let slot = terms.entry(idx).or_insert_with(BigComplex::zero);
                        *slot = &*slot + &c;
                    }
                    m += 1;
                }
            }
        }
        Ok(Omega { g, n, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_are_involutions() {
        for a in 1..=3 {
            let r = Recursion::new(a, 256, 2).unwrap();
            assert_eq!(r.frames(), a);
            assert!(r.frame_defect_log2().unwrap().unwrap_or(i64::MIN) < -200);
        }
    }

    #[test]
    fn pole_orders_respect_the_bound() {
        let mut r = Recursion::new(2, 256, 3).unwrap();
        for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)] {
            let w = r.omega(g, n).unwrap();
            assert!(w.max_pole() <= pole_bound(g, n), "({g},{n})");
        }
        assert!(matches!(r.omega(0, 2), Err(Error::UnstableCorrelator { .. })));
    }
}
