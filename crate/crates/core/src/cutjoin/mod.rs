//! Refined cut-and-join recursion for the monotone numbers with orbifold point of order `a`.
//!
//! `H^{[a],ℓ}_{g,n}(μ₁ | μ_{S∖1})` is built from three ways of removing the
//! last transposition (a cut, a join inside one component, a join of two
//! components); `H^{[a]}_{g,n}(μ)` is the sum of the refined numbers over the
//! distinguished position and the counter. Everything is memoised in a
//! [`ValueCache`] that can be persisted.

mod cache;

use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cache::ValueCache;

use crate::algebra::rational::binomial;
use crate::combinat::sorted_desc;
use crate::error::{Error, Result};

/// Arguments of a refined number; `rest` is kept non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefinedKey {
    pub a: usize,
    pub g: usize,
    pub mu1: usize,
    pub ell: usize,
    pub rest: Vec<usize>,
}

impl RefinedKey {
    pub fn new(a: usize, g: usize, mu1: usize, ell: usize, rest: &[usize]) -> Result<Self> {
        if a == 0 || mu1 == 0 || rest.contains(&0) {
            return Err(Error::InvalidInput("parts and a must be positive".into()));
        }
        if !(1..=a).contains(&ell) {
            return Err(Error::InvalidInput(format!("counter {ell} outside 1..={a}")));
        }
        Ok(RefinedKey { a, g, mu1, ell, rest: sorted_desc(rest) })
    }

    pub fn degree(&self) -> usize {
        self.mu1 + self.rest.iter().sum::<usize>()
    }

    /// `2g − 2 + n + |μ|/a`, when it is a non-negative integer.
    pub fn steps(&self) -> Option<usize> {
        crate::oracle::steps(self.a, self.g, self.rest.len() + 1, self.degree())
    }
}

/// Arguments of `H^{[a]}_{g,n}(μ)`; `mu` is kept non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainKey {
    pub a: usize,
    pub g: usize,
    pub mu: Vec<usize>,
}

impl PlainKey {
    pub fn new(a: usize, g: usize, mu: &[usize]) -> Result<Self> {
        if a == 0 || mu.is_empty() || mu.contains(&0) {
            return Err(Error::InvalidInput("μ must be a non-empty tuple of positive parts".into()));
        }
        Ok(PlainKey { a, g, mu: sorted_desc(mu) })
    }

    pub fn degree(&self) -> usize {
        self.mu.iter().sum()
    }

    pub fn steps(&self) -> Option<usize> {
        crate::oracle::steps(self.a, self.g, self.mu.len(), self.degree())
    }
}

/// `binom(ak+k−2, k−1)/(a k²)`.
pub fn closed_form_01(a: usize, k: usize) -> BigRational {
    assert!(a >= 1 && k >= 1);
    let top = binomial((a * k + k - 2) as u64, (k - 1) as u64);
    BigRational::new(top, BigInt::from(a * k * k))
}

/// Memoised evaluator. Shareable across threads: concurrent callers may
/// compute the same entry twice but always read back the first stored value.
#[derive(Default)]
pub struct CutJoin {
    cache: RwLock<ValueCache>,
    evaluations: AtomicU64,
}

impl CutJoin {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: ValueCache) -> Self {
        CutJoin { cache: RwLock::new(cache), evaluations: AtomicU64::new(0) }
    }

    /// Loads `path` (an absent file is an empty cache) and attaches it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::with_cache(ValueCache::load(path)?))
    }

    /// Number of entries computed by the recursion rather than read back.
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Persists the memo table to its backing file.
    pub fn flush(&self) -> Result<()> {
        self.cache.write().expect("cache lock").flush()
    }

    pub fn into_cache(self) -> ValueCache {
        self.cache.into_inner().expect("cache lock")
    }

    pub fn refined(&self, a: usize, g: usize, mu1: usize, ell: usize, rest: &[usize]) -> Result<BigRational> {
        Ok(self.refined_key(&RefinedKey::new(a, g, mu1, ell, rest)?))
    }

    pub fn hurwitz(&self, a: usize, g: usize, mu: &[usize]) -> Result<BigRational> {
        Ok(self.plain_key(&PlainKey::new(a, g, mu)?))
    }

    pub fn refined_key(&self, key: &RefinedKey) -> BigRational {
        let Some(m) = key.steps() else { return BigRational::zero() };
        if let Some(v) = self.cache.read().expect("cache lock").refined.get(key) {
            return v.clone();
        }
        let v = self.evaluate_refined(key, m);
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        self.cache.write().expect("cache lock").insert_refined(key.clone(), v)
    }

    pub fn plain_key(&self, key: &PlainKey) -> BigRational {
        if key.steps().is_none() {
            return BigRational::zero();
        }
        if let Some(v) = self.cache.read().expect("cache lock").plain.get(key) {
            return v.clone();
        }
        let mut v = BigRational::zero();
        for i in 0..key.mu.len() {
            let mut rest = key.mu.clone();
            let mu1 = rest.remove(i);
            for ell in 1..=key.a {
                v += self.refined_key(&RefinedKey { a: key.a, g: key.g, mu1, ell, rest: rest.clone() });
            }
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        self.cache.write().expect("cache lock").insert_plain(key.clone(), v)
    }

    /// `Σ_{p=1}^{ℓ} H^{[a],p}_g(μ₁ | rest)`.
    fn counter_sum(&self, a: usize, g: usize, mu1: usize, ell: usize, rest: Vec<usize>) -> BigRational {
        let mut key = RefinedKey { a, g, mu1, ell: 1, rest: sorted_desc(&rest) };
        if key.steps().is_none() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for p in 1..=ell {
            key.ell = p;
            acc += self.refined_key(&key);
        }
        acc
    }

    fn evaluate_refined(&self, key: &RefinedKey, m: usize) -> BigRational {
        let RefinedKey { a, g, mu1, ell, ref rest } = *key;
        if m == 0 {
            // only (0, a | ) has no transposition
            debug_assert!(g == 0 && rest.is_empty() && mu1 == a);
            return if ell == 1 { BigRational::new(BigInt::one(), BigInt::from(a)) } else { BigRational::zero() };
        }
        let total = key.degree();
        let mut acc = BigRational::zero();

        // cut: the last transposition split a cycle of length μ₁ + μ_i
        if mu1 + ell > a {
            for i in 0..rest.len() {
                let mut r = rest.clone();
                let mi = r.remove(i);
                acc += self.counter_sum(a, g, mu1 + mi, ell, r);
            }
        }

        for beta in 1..mu1 {
            let alpha = mu1 - beta;
            let b = BigInt::from(beta);

            // join within one component
            if g >= 1 {
                let mut r = rest.clone();
                r.push(beta);
                acc += self.counter_sum(a, g - 1, alpha, ell, r) * &b;
            }

            // join of two components, (g₁, I ∪ {β}) unrefined and (g₂, α | J) refined
            for mask in 0u32..(1 << rest.len()) {
                let (mut part_i, mut part_j) = (vec![beta], Vec::new());
                for (i, &p) in rest.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        part_i.push(p);
                    } else {
                        part_j.push(p);
                    }
                }
                let weight =
                    BigRational::new(BigInt::from(part_j.iter().sum::<usize>() + alpha) * &b, BigInt::from(total));
                for g1 in 0..=g {
                    let left = self.plain_key(&PlainKey { a, g: g1, mu: sorted_desc(&part_i) });
                    if left.is_zero() {
                        continue;
                    }
                    let right = self.counter_sum(a, g - g1, alpha, ell, part_j.clone());
                    if right.is_zero() {
                        continue;
                    }
                    acc += left * right * &weight;
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn base_cases() {
        let cj = CutJoin::new();
        for a in 1..=5 {
            for ell in 1..=a {
                let want = if ell == 1 { ratio(1, a as i64) } else { int(0) };
                assert_eq!(cj.refined(a, 0, a, ell, &[]).unwrap(), want);
            }
            assert_eq!(cj.hurwitz(a, 0, &[a]).unwrap(), ratio(1, a as i64));
        }
    }

    #[test]
    fn one_step_values() {
        let cj = CutJoin::new();
        assert_eq!(cj.refined(2, 0, 4, 1, &[]).unwrap(), ratio(1, 4));
        assert_eq!(cj.refined(1, 0, 2, 1, &[]).unwrap(), ratio(1, 2));
        assert_eq!(cj.hurwitz(2, 0, &[4]).unwrap(), ratio(1, 2));
        assert_eq!(cj.hurwitz(1, 0, &[1, 1]).unwrap(), int(1));
    }

    #[test]
    fn vanishing() {
        let cj = CutJoin::new();
        assert_eq!(cj.hurwitz(2, 0, &[3]).unwrap(), int(0));
        assert_eq!(cj.hurwitz(3, 0, &[2, 2]).unwrap(), int(0));
        assert_eq!(cj.refined(2, 0, 1, 1, &[1]).unwrap(), cj.refined(2, 0, 1, 1, &[1]).unwrap());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_01(1, 1), int(1));
        assert_eq!(closed_form_01(2, 3), ratio(7, 6));
        assert_eq!(closed_form_01(1, 2), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed_keys() {
        let cj = CutJoin::new();
        assert!(cj.refined(2, 0, 2, 3, &[]).is_err());
        assert!(cj.refined(2, 0, 0, 1, &[]).is_err());
        assert!(cj.hurwitz(2, 0, &[]).is_err());
    }
}
