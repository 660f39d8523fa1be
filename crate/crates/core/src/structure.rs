//! Quasi-polynomiality of `Q(μ) = H(μ) / ∏ binom(μ_i + ⌊μ_i/a⌋, ⌊μ_i/a⌋)` on
//! residue classes mod `a`, tested by finite differences with step `a`.
//!
//! The factor `(a+1)^{Σ{μ_i/a}}` is constant on a class and is never formed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{binomial, to_string};
use crate::cutjoin::CutJoin;
use crate::error::{Error, Result};

/// `(binom(μ + ⌊μ/a⌋, ⌊μ/a⌋), {μ/a})`.
pub fn c_factor_parts(a: usize, mu: usize) -> Result<(BigInt, BigRational)> {
    if a == 0 || mu == 0 {
        return Err(Error::InvalidInput("a and μ must be positive".into()));
    }
    let q = mu / a;
    let frac = BigRational::new(BigInt::from(mu % a), BigInt::from(a));
    Ok((binomial((mu + q) as u64, q as u64), frac))
}

fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

fn orders_of_total(n: usize, total: usize) -> Vec<Vec<usize>> {
    multi_indices(&vec![total + 1; n]).into_iter().filter(|k| k.iter().sum::<usize>() == total).collect()
}

/// Values on a box `[0, dims_0) × … × [0, dims_{n−1})`, row-major.
#[derive(Clone, Debug)]
pub struct Grid {
    pub dims: Vec<usize>,
    pub values: Vec<BigRational>,
}

impl Grid {
    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> Result<BigRational>) -> Result<Self> {
        let values = multi_indices(dims).iter().map(|j| f(j)).collect::<Result<Vec<_>>>()?;
        Ok(Grid { dims: dims.to_vec(), values })
    }

    fn at(&self, j: &[usize]) -> &BigRational {
        let mut idx = 0;
        for (t, &d) in self.dims.iter().enumerate() {
            idx = idx * d + j[t];
        }
        &self.values[idx]
    }

    /// The mixed difference `Δ^k Q(j)`, or `None` if it leaves the box.
    pub fn difference(&self, k: &[usize], j: &[usize]) -> Option<BigRational> {
        if (0..self.dims.len()).any(|t| j[t] + k[t] >= self.dims[t]) {
            return None;
        }
        let total: usize = k.iter().sum();
        let mut acc = BigRational::zero();
        for i in multi_indices(&k.iter().map(|&x| x + 1).collect::<Vec<_>>()) {
            let mut c = BigInt::from(1);
            for t in 0..k.len() {
                c *= binomial(k[t] as u64, i[t] as u64);
            }
            if (total - i.iter().sum::<usize>()) % 2 == 1 {
                c = -c;
            }
            let p: Vec<usize> = (0..k.len()).map(|t| j[t] + i[t]).collect();
            acc += BigRational::from_integer(c) * self.at(&p);
        }
        Some(acc)
    }

    /// First `(order, point)` at which a difference of total order `total` is nonzero.
    pub fn first_nonzero_difference(&self, total: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        for k in orders_of_total(self.dims.len(), total) {
            for j in multi_indices(&self.dims) {
                if let Some(d) = self.difference(&k, &j) {
                    if !d.is_zero() {
                        return Some((k, j));
                    }
                }
            }
        }
        None
    }

    /// Smallest `D` such that every difference of order `D + 1` fitting in
    /// the box vanishes; `None` if the box is too small to decide.
    pub fn fitted_degree(&self) -> Option<usize> {
        let max = *self.dims.iter().min()?;
        (0..max.saturating_sub(1)).find(|&d| self.first_nonzero_difference(d + 1).is_none())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassResult {
    /// Representatives in `1..=a`.
    pub residue: Vec<usize>,
    pub points: Vec<usize>,
    pub identically_zero: bool,
    pub fitted_degree: Option<usize>,
    /// First nonvanishing difference of the tested order: (order, grid point).
    pub first_failure: Option<(Vec<usize>, Vec<usize>)>,
    /// Whether some difference of order `3g − 3 + n` is nonzero.
    pub degree_attained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiPolyReport {
    pub a: usize,
    pub g: usize,
    pub n: usize,
    pub bound: usize,
    pub degree_bound: usize,
    pub classes: Vec<ClassResult>,
    pub symmetry_violations: Vec<Vec<usize>>,
    /// `Q` at the sorted grid points, as `"p/q"`, for inspection.
    pub samples: Vec<(Vec<usize>, String)>,
}

impl QuasiPolyReport {
    pub fn passed(&self) -> bool {
        let nonzero: Vec<&ClassResult> = self.classes.iter().filter(|c| !c.identically_zero).collect();
        self.symmetry_violations.is_empty()
            && nonzero.iter().all(|c| c.first_failure.is_none())
            && (nonzero.is_empty() || nonzero.iter().any(|c| c.degree_attained))
    }
}

/// `Q(μ)` with the class constant omitted.
pub fn normalized(cj: &CutJoin, a: usize, g: usize, mu: &[usize]) -> Result<BigRational> {
    let mut den = BigInt::from(1);
    for &m in mu {
        den *= c_factor_parts(a, m)?.0;
    }
    Ok(cj.hurwitz(a, g, mu)? / BigRational::from_integer(den))
}

/// Finite-difference test on every residue class with `|r| ≡ 0 mod a`,
/// using all `μ_i ≤ bound` in the class.
pub fn quasipoly_check(a: usize, g: usize, n: usize, bound: usize, cj: &CutJoin) -> Result<QuasiPolyReport> {
    if a == 0 || n == 0 || 2 * g + n <= 2 {
        return Err(Error::InvalidInput(format!("({g},{n}) is not stable or a = 0")));
    }
    let degree = 3 * g + n - 3;
    let order = degree + 1;
    let mut classes = Vec::new();
    let mut sorted_values: std::collections::BTreeMap<Vec<usize>, BigRational> = Default::default();
    for r0 in multi_indices(&vec![a; n]) {
        let residue: Vec<usize> = r0.iter().map(|&r| r + 1).collect();
        if residue.iter().sum::<usize>() % a != 0 {
            continue;
        }
        let points: Vec<usize> = residue.iter().map(|&r| if r > bound { 0 } else { (bound - r) / a + 1 }).collect();
        if points.iter().any(|&p| p < order + 1) {
            return Err(Error::InsufficientGrid(format!(
                "class {residue:?} has {points:?} points; order {order} differences need {}",
                order + 1
            )));
        }
        let grid = Grid::from_fn(&points, |j| {
            let mu: Vec<usize> = (0..n).map(|t| residue[t] + a * j[t]).collect();
            let mut key = mu.clone();
            key.sort_unstable();
            if let Some(v) = sorted_values.get(&key) {
                return Ok(v.clone());
            }
            let v = normalized(cj, a, g, &key)?;
            sorted_values.insert(key, v.clone());
            Ok(v)
        })?;
        let zero = grid.is_zero();
        classes.push(ClassResult {
            residue,
            points,
            identically_zero: zero,
            fitted_degree: if zero { None } else { grid.fitted_degree() },
            first_failure: grid.first_nonzero_difference(order),
            degree_attained: grid.first_nonzero_difference(degree).is_some(),
        });
    }
    let mut symmetry = Vec::new();
    for mu in multi_indices(&vec![bound; n]) {
        let mu: Vec<usize> = mu.iter().map(|&m| m + 1).collect();
        if mu.iter().sum::<usize>() % a != 0 {
            continue;
        }
        let mut key = mu.clone();
        key.sort_unstable();
        if key == mu {
            continue;
        }
        // the engine sorts its keys, so this guards the normalisation and the lookup path
        if normalized(cj, a, g, &mu)? != normalized(cj, a, g, &key)? {
            symmetry.push(mu);
        }
    }
    let samples = sorted_values.iter().map(|(k, v)| (k.clone(), to_string(v))).collect();
    Ok(QuasiPolyReport { a, g, n, bound, degree_bound: degree, classes, symmetry_violations: symmetry, samples })
}

/// One line per class.
pub fn describe(report: &QuasiPolyReport) -> String {
    let mut out = String::new();
    for c in &report.classes {
        let fit = match (c.identically_zero, c.fitted_degree) {
            (true, _) => "zero".to_string(),
            (false, Some(d)) => d.to_string(),
            (false, None) => "undetermined".to_string(),
        };
        let fail = match &c.first_failure {
            None => String::new(),
            Some((k, j)) => format!(" first failing difference order {k:?} at {j:?}"),
        };
        out.push_str(&format!("class {:?}: degree {fit}{fail}\n", c.residue));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    #[test]
    fn c_factor_examples() {
        assert_eq!(c_factor_parts(1, 5).unwrap(), (binomial(10, 5), int(0)));
        assert_eq!(c_factor_parts(2, 3).unwrap(), (BigInt::from(4), BigRational::new(1.into(), 2.into())));
        assert_eq!(c_factor_parts(2, 4).unwrap(), (BigInt::from(15), int(0)));
    }

    fn eval(coeffs: &[(i64, Vec<u32>)], j: &[usize]) -> BigRational {
        coeffs.iter().map(|(c, e)| int(*c) * int(j.iter().zip(e).map(|(&x, &p)| (x as i64).pow(p)).product())).sum()
    }

    proptest! {
        #[test]
        fn differences_detect_the_degree(
            terms in prop::collection::vec((-5i64..=5, prop::collection::vec(0u32..=3, 2)), 1..5)
        ) {
            let degree = terms.iter().filter(|(c, _)| *c != 0).map(|(_, e)| e.iter().sum::<u32>() as usize).max();
            let grid = Grid::from_fn(&[6, 6], |j| Ok(eval(&terms, j))).unwrap();
            match degree {
                None => prop_assert!(grid.is_zero()),
                Some(d) => {
                    // like monomials may cancel, so d is an upper bound
                    prop_assert!(grid.first_nonzero_difference(d + 1).is_none());
                    if let Some(fit) = grid.fitted_degree() {
                        prop_assert!(fit <= d);
                        if fit > 0 {
                            prop_assert!(grid.first_nonzero_difference(fit).is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn synthetic_polynomial_degree() {
        // 3x²y − x + 7, total degree 3
        let grid =
            Grid::from_fn(&[5, 5], |j| Ok(eval(&[(3, vec![2, 1]), (-1, vec![1, 0]), (7, vec![0, 0])], j))).unwrap();
        assert!(grid.first_nonzero_difference(4).is_none());
        assert!(grid.first_nonzero_difference(3).is_some());
        assert_eq!(grid.fitted_degree(), Some(3));
    }

    #[test]
    fn genus_zero_three_points_is_constant_for_a1() {
        let cj = CutJoin::new();
        let r = quasipoly_check(1, 0, 3, 6, &cj).unwrap();
        assert!(r.passed(), "{}", describe(&r));
        assert_eq!(r.classes[0].fitted_degree, Some(0));
    }

    #[test]
    fn genus_one_one_point_is_linear_for_a1() {
        let cj = CutJoin::new();
        let r = quasipoly_check(1, 1, 1, 8, &cj).unwrap();
        assert!(r.passed(), "{}", describe(&r));
        assert_eq!(r.classes[0].fitted_degree, Some(1));
    }

    #[test]
    fn small_grid_is_rejected() {
        let cj = CutJoin::new();
        assert!(matches!(quasipoly_check(2, 1, 1, 3, &cj), Err(Error::InsufficientGrid(_))));
    }
}
