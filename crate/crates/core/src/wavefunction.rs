//! The wave function `Z(x, ħ)` as an element of `Q((ħ))[[x]]`, built from
//! Hurwitz numbers and from its product formula, and the quantum curve.
//!
//! A truncated `Z` (through `x^X`) is treated as a polynomial in `x` by the
//! operators below, so `ŷ` of the top coefficient is exact and the residual
//! of the quantum curve is supported at the boundary degree only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{factorial, to_string};
use crate::algebra::{BiSeriesXH, LaurentSeries, PowerSeries, Var};
use crate::combinat::{compositions, stirling2};
use crate::cutjoin::CutJoin;
use crate::error::{Error, Result};
use crate::oracle::lemma::check_stirling_counts;
use crate::oracle::Budget;

type Laurent = LaurentSeries<BigRational>;
type Wave = BiSeriesXH<BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `F_{g,n}(x, …, x) = Σ_{μ₁+…+μ_n ≤ X} H_{g,n}(μ) x^{|μ|}`, summed over
/// compositions.
pub fn free_energy_diagonal(
    a: usize,
    g: usize,
    n: usize,
    x_order: usize,
    cj: &CutJoin,
) -> Result<PowerSeries<BigRational>> {
    if a == 0 || n == 0 {
        return Err(Error::InvalidInput("a and n must be positive".into()));
    }
    let mut c = vec![BigRational::zero(); x_order + 1];
    for (d, slot) in c.iter_mut().enumerate().skip(n) {
        if d % a != 0 {
            continue;
        }
        for mu in compositions(d, n) {
            *slot += cj.hurwitz(a, g, &mu)?;
        }
    }
    Ok(PowerSeries::new(Var::X, c))
}

/// `∏_{j=1}^{n} (1 − jħ)^{−1}` through `ħ^top`.
pub fn stirling_product(n: usize, top: i64) -> Laurent {
    let mut p = Laurent::monomial(Var::HBAR, 0, BigRational::one());
    for j in 1..=n {
        p = p.mul_unchecked(&Laurent::polynomial(Var::HBAR, 0, vec![q(1), q(-(j as i64))]));
    }
    p.invert(top).expect("constant term 1")
}

/// `1 + Σ_{k=1}^{K} x^{ak}/(k! a^k ħ^k) ∏_{j=1}^{ak−1} (1 − jħ)^{−1}`, every
/// ħ-coefficient known through `ħ^R`.
pub fn wavefunction_closed(a: usize, k_max: usize, h_top: i64) -> Wave {
    assert!(a >= 1);
    let mut z = Wave::zero(a * k_max);
    z.set(0, Laurent::monomial(Var::HBAR, 0, BigRational::one()));
    for k in 1..=k_max {
        let norm = BigRational::new(BigInt::one(), BigInt::from(a).pow(k as u32) * factorial(k as u64));
        let c = stirling_product(a * k - 1, h_top + k as i64).shift(-(k as i64)).scale(&norm);
        z.set(a * k, c);
    }
    for d in 1..=a * k_max {
        if d % a != 0 {
            z.set(d, Laurent::zero(Var::HBAR, h_top));
        }
    }
    z
}

/// `exp[Σ_{g,n} ħ^{2g−2+n}/n! F_{g,n}(x, …, x)]` truncated at `x^{aK}`, ħ
/// through `ħ^R`.
pub fn wavefunction_from_numbers(a: usize, k_max: usize, h_top: i64, cj: &CutJoin) -> Result<Wave> {
    let x_order = a * k_max;
    // a product of up to K factors, each with a simple pole in ħ
    let s_top = h_top + k_max as i64 - 1;
    let mut per_degree: Vec<Vec<BigRational>> = vec![Vec::new(); x_order + 1];
    let floor = -1i64;
    let width = (s_top - floor + 1).max(0) as usize;
    for slot in per_degree.iter_mut() {
        *slot = vec![BigRational::zero(); width];
    }
    for n in 1..=x_order {
        for g in 0.. {
            let chi = 2 * g as i64 - 2 + n as i64;
            if chi > s_top {
                break;
            }
            let f = free_energy_diagonal(a, g, n, x_order, cj)?;
            let inv_n = BigRational::new(BigInt::one(), factorial(n as u64));
            for (d, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    per_degree[d][(chi - floor) as usize] += c * &inv_n;
                }
            }
        }
    }
    let mut s = Wave::zero(x_order);
    for (d, coeffs) in per_degree.into_iter().enumerate().skip(1) {
        let c = if d % a == 0 { Laurent::new(Var::HBAR, floor, coeffs, s_top) } else { Laurent::exact_zero(Var::HBAR) };
        s.set(d, c);
    }
    Ok(s.exp()?.truncate_h(h_top))
}

/// `x̂`: multiplication by `x`, raising the x-order by one.
pub fn x_hat(z: &Wave) -> Wave {
    let mut out = Wave::zero(z.x_order() + 1);
    for (d, c) in z.coeffs().iter().enumerate() {
        out.set(d + 1, c.clone());
    }
    out
}

/// `ŷ = −ħ ∂/∂x` on the polynomial `z`; the x-order is kept.
pub fn y_hat(z: &Wave) -> Wave {
    let mut out = Wave::zero(z.x_order());
    for (d, c) in z.coeffs().iter().enumerate().skip(1) {
        out.set(d - 1, c.shift(1).scale(&q(-(d as i64))));
    }
    out
}

/// `1 + x̂ŷ + jħ`.
pub fn curve_factor(z: &Wave, j: i64) -> Wave {
    let mut out = z.clone();
    let xy = x_hat(&y_hat(z));
    for d in 0..=z.x_order() {
        let c = z.coeffs()[d].add_unchecked(&xy.coeffs()[d]).add_unchecked(&z.coeffs()[d].shift(1).scale(&q(j)));
        out.set(d, c);
    }
    out
}

fn pad(z: &Wave, x_order: usize) -> Wave {
    let mut out = Wave::zero(x_order);
    for (d, c) in z.coeffs().iter().enumerate().take(x_order + 1) {
        out.set(d, c.clone());
    }
    out
}

/// `[x̂^{a−1} + ∏_{j=0}^{a−1} (1 + x̂ŷ + jħ) ŷ] Z`, through `x^{X+a−1}`.
pub fn apply_quantum_curve(a: usize, z: &Wave) -> Wave {
    let top = z.x_order() + a - 1;
    let mut shifted = z.clone();
    for _ in 0..a - 1 {
        shifted = x_hat(&shifted);
    }
    let mut w = y_hat(z);
    for j in 0..a as i64 {
        w = curve_factor(&w, j);
    }
    pad(&shifted, top).add(&pad(&w, top))
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub a: usize,
    pub x_order: usize,
    pub h_top: i64,
    /// `a(K+1) − 1`: every degree below it must vanish.
    pub boundary: usize,
    /// x-degrees below the boundary whose residual is nonzero.
    pub nonzero_below: Vec<usize>,
    pub boundary_residual_nonzero: bool,
}

impl CurveReport {
    pub fn passed(&self) -> bool {
        self.nonzero_below.is_empty()
    }
}

/// Applies the quantum curve to `wavefunction_closed(a, K, R)`.
pub fn check_quantum_curve(a: usize, k_max: usize, h_top: i64) -> CurveReport {
    let r = apply_quantum_curve(a, &wavefunction_closed(a, k_max, h_top));
    let boundary = a * (k_max + 1) - 1;
    let nonzero_below = (0..boundary).filter(|&d| !r.coeffs()[d].is_zero()).collect();
    CurveReport {
        a,
        x_order: a * k_max,
        h_top,
        boundary,
        nonzero_below,
        boundary_residual_nonzero: r.coeffs().get(boundary).is_some_and(|c| !c.is_zero()),
    }
}

/// `(ŷx̂ − x̂ŷ) x^d = −ħ x^d` for every `d ≤ max_d`.
pub fn commutator_holds(max_d: usize) -> bool {
    (0..=max_d).all(|d| {
        let mut mono = Wave::zero(d);
        mono.set(d, Laurent::monomial(Var::HBAR, 0, BigRational::one()));
        let yx = y_hat(&x_hat(&mono));
        let xy = x_hat(&y_hat(&mono));
        let diff = pad(&yx, d + 1).add(&pad(&xy, d + 1).scale_h(&Laurent::monomial(Var::HBAR, 0, q(-1))));
        diff.coeffs().iter().enumerate().all(|(e, c)| {
            let want = if e == d { Laurent::monomial(Var::HBAR, 1, q(-1)) } else { Laurent::exact_zero(Var::HBAR) };
            c.sub(&want).map(|r| r.is_zero()).unwrap_or(false)
        })
    })
}

/// Coefficients `(x-degree, ħ-exponent)` through `ħ^top` where `u` and `v` differ.
pub fn differences(u: &Wave, v: &Wave, top: i64) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    let n = u.x_order().min(v.x_order());
    for d in 0..=n {
        let (cu, cv) = (&u.coeffs()[d], &v.coeffs()[d]);
        let lo = cu.floor().min(cv.floor());
        for e in lo..=top {
            match (cu.coeff(e), cv.coeff(e)) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => out.push((d, e)),
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StirlingReport {
    pub k_max: usize,
    pub h_top: i64,
    pub violations: Vec<String>,
}

impl StirlingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Σ_N S(N, K) ħ^{N−K} = ∏_{j=1}^{K} (1 − jħ)^{−1}` through `ħ^R` for
/// `K ≤ k_max`, and monotone sequence counts `S(d+m−1, d−1)` for
/// `d ≤ max_d`, `m ≤ max_m`.
pub fn stirling_identity_check(k_max: usize, h_top: i64, max_d: usize, max_m: usize) -> Result<StirlingReport> {
    let mut violations = Vec::new();
    for k in 1..=k_max {
        let p = stirling_product(k, h_top);
        for e in 0..=h_top {
            let want = BigRational::from_integer(stirling2(k + e as usize, k));
            let got = p.coeff(e)?;
            if got != want {
                violations.push(format!("K={k}, ħ^{e}: product gives {}, S = {}", to_string(&got), to_string(&want)));
            }
        }
    }
    violations.extend(check_stirling_counts(max_d, max_m, Budget::default())?.violations);
    Ok(StirlingReport { k_max, h_top, violations })
}

/// Tabulates `Z` as `(x-degree, ħ-exponent, p/q)` rows with nonzero values.
pub fn coefficient_table(z: &Wave) -> Vec<(usize, i64, String)> {
    let mut rows = Vec::new();
    for (d, c) in z.coeffs().iter().enumerate() {
        for (e, v) in c.stored() {
            if !v.is_zero() {
                rows.push((d, e, to_string(v)));
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn free_energy_examples() {
        let cj = CutJoin::new();
        let f = free_energy_diagonal(3, 0, 1, 3, &cj).unwrap();
        assert_eq!(f.coeffs(), &[int(0), int(0), int(0), ratio(1, 3)]);
        let f = free_energy_diagonal(1, 0, 2, 2, &cj).unwrap();
        assert_eq!(f.coeffs(), &[int(0), int(0), int(1)]);
        let f = free_energy_diagonal(2, 0, 1, 4, &cj).unwrap();
        assert_eq!(f.coeffs(), &[int(0), int(0), ratio(1, 2), int(0), ratio(1, 2)]);
    }

    #[test]
    fn closed_form_shape() {
        let z = wavefunction_closed(1, 2, 3);
        assert_eq!(z.coeff(1).unwrap().coeff(-1).unwrap(), int(1));
        assert_eq!(z.coeff(1).unwrap().coeff(0).unwrap(), int(0));
        // 1/(2ħ²) (1 − ħ)^{-1}
        for e in -2..=3 {
            assert_eq!(z.coeff(2).unwrap().coeff(e).unwrap(), ratio(1, 2));
        }
        let z = wavefunction_closed(2, 2, 3);
        for e in -1..=3 {
            assert_eq!(z.coeff(2).unwrap().coeff(e).unwrap(), ratio(1, 2));
        }
        assert_eq!(z.coeff(4).unwrap().leading().unwrap().0, -2);
    }

    #[test]
    fn pipelines_agree_small() {
        let cj = CutJoin::new();
        let (u, v) = (wavefunction_from_numbers(1, 3, 3, &cj).unwrap(), wavefunction_closed(1, 3, 3));
        assert!(differences(&u, &v, 3).is_empty());
        assert_eq!(u.coeff(0).unwrap().coeff(0).unwrap(), int(1));
    }

    #[test]
    fn curve_annihilates_below_boundary() {
        let r = check_quantum_curve(1, 4, 4);
        assert!(r.passed() && r.boundary == 4 && r.boundary_residual_nonzero);
        assert!(check_quantum_curve(2, 3, 4).passed());
    }

    #[test]
    fn one_is_not_annihilated() {
        let r = apply_quantum_curve(1, &Wave::one(0));
        assert_eq!(r.coeff(0).unwrap().coeff(0).unwrap(), int(1));
    }

    #[test]
    fn factors_commute_and_commutator() {
        assert!(commutator_holds(6));
        let z = wavefunction_closed(2, 2, 2);
        let (u, v) = (curve_factor(&curve_factor(&z, 0), 1), curve_factor(&curve_factor(&z, 1), 0));
        assert!(differences(&u, &v, 2).is_empty());
    }

    #[test]
    fn stirling_generating_function() {
        let p = stirling_product(2, 3);
        assert_eq!((0..=3).map(|e| p.coeff(e).unwrap()).collect::<Vec<_>>(), vec![int(1), int(3), int(7), int(15)]);
        assert!(stirling_identity_check(3, 5, 4, 3).unwrap().passed());
    }
}
