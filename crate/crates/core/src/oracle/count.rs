use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::permutation::{Composition, Permutation};
use super::search::{Classifier, Searcher};
use crate::algebra::rational::factorial;
use crate::combinat::{labellings, partitions, sorted_desc};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Simple,
    Orbifold,
    Monotone,
    MonotoneOrbifold,
}

impl Flavor {
    pub fn is_monotone(self) -> bool {
        matches!(self, Flavor::Monotone | Flavor::MonotoneOrbifold)
    }

    pub fn is_orbifold(self) -> bool {
        matches!(self, Flavor::Orbifold | Flavor::MonotoneOrbifold)
    }
}

/// How `σ₀` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every `σ₀` of the required cycle type is enumerated.
    Free,
    /// `σ₀` is the special permutation and the count is rescaled by the
    /// size of its conjugacy class.
    FixedSigma0,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_degree: usize,
    pub max_steps: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 8, max_steps: 10, max_states: 30_000_000 }
    }
}

/// Packs a non-increasing part list into a key; parts are below 256.
fn part_key(parts: &[u8]) -> u128 {
    parts.iter().enumerate().fold(0u128, |acc, (i, &p)| acc | (p as u128) << (8 * i))
}

/// Cycle lengths of a 0-based one-line permutation, plus the cycle index of
/// every element.
fn cycles_of(tau: &[u8]) -> (Vec<u8>, [u8; 16]) {
    let mut which = [u8::MAX; 16];
    let mut lens = Vec::with_capacity(tau.len());
    for start in 0..tau.len() {
        if which[start] != u8::MAX {
            continue;
        }
        let c = lens.len() as u8;
        let mut len = 0;
        let mut x = start;
        while which[x] == u8::MAX {
            which[x] = c;
            len += 1;
            x = tau[x] as usize;
        }
        lens.push(len);
    }
    (lens, which)
}

/// Outcome = cycle type of the product, with a flag for transitivity.
pub(crate) struct CycleTypeClass {
    index: FxHashMap<u128, u32>,
    connected_only: bool,
}

impl CycleTypeClass {
    pub fn new(d: usize, connected_only: bool) -> Self {
        let index = partitions(d)
            .iter()
            .enumerate()
            .map(|(i, p)| (part_key(&p.iter().map(|&x| x as u8).collect::<Vec<_>>()), i as u32))
            .collect();
        CycleTypeClass { index, connected_only }
    }

    /// Class of (cycle type, transitive); only transitive classes exist in
    /// connected-only mode.
    pub fn class_of(&self, parts: &[usize], transitive: bool) -> Option<u32> {
        let key = part_key(&sorted_desc(parts).iter().map(|&x| x as u8).collect::<Vec<_>>());
        let i = *self.index.get(&key)?;
        if self.connected_only {
            transitive.then_some(i)
        } else {
            Some(2 * i + transitive as u32)
        }
    }
}

impl Classifier for CycleTypeClass {
    fn num_classes(&self) -> usize {
        self.index.len() * if self.connected_only { 1 } else { 2 }
    }

    fn connected_only(&self) -> bool {
        self.connected_only
    }

    fn classify(&self, tau: &[u8], orbits: &[u8], _: Option<u8>) -> Option<u32> {
        let transitive = orbits.iter().all(|&o| o == 0);
        if self.connected_only && !transitive {
            return None;
        }
        let (mut lens, _) = cycles_of(tau);
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let i = self.index[&part_key(&lens)];
        Some(if self.connected_only { i } else { 2 * i + transitive as u32 })
    }
}

/// Outcome = (length of the cycle through `ak`, remaining cycle type,
/// counter `ℓ`) for transitive refined factorisations of the special `σ₀`.
pub(crate) struct RefinedClass {
    a: usize,
    d: usize,
    index: FxHashMap<(u8, u128), u32>,
}

impl RefinedClass {
    pub fn new(a: usize, d: usize) -> Self {
        let mut index = FxHashMap::default();
        for mu1 in 1..=d {
            for rest in partitions(d - mu1) {
                let key = (mu1 as u8, part_key(&rest.iter().map(|&x| x as u8).collect::<Vec<_>>()));
                let n = index.len() as u32;
                index.insert(key, n);
            }
        }
        RefinedClass { a, d, index }
    }

    pub fn class_of(&self, mu1: usize, rest: &[usize], ell: usize) -> Option<u32> {
        let key = (mu1 as u8, part_key(&sorted_desc(rest).iter().map(|&x| x as u8).collect::<Vec<_>>()));
        let i = *self.index.get(&key)?;
        (1..=self.a).contains(&ell).then_some(i * self.a as u32 + ell as u32 - 1)
    }
}

impl Classifier for RefinedClass {
    fn num_classes(&self) -> usize {
        self.index.len() * self.a
    }

    fn connected_only(&self) -> bool {
        true
    }

    fn classify(&self, tau: &[u8], orbits: &[u8], s_last: Option<u8>) -> Option<u32> {
        if orbits.iter().any(|&o| o != 0) {
            return None;
        }
        let last_block = self.d - self.a; // 0-based start of the last σ₀ cycle
        let ell = match s_last {
            // no transposition at all: the counter of the bold out-end is 1
            None => 1,
            Some(s) if (s as usize) >= last_block => s as usize - last_block + 1,
            Some(_) => return None,
        };
        let (lens, which) = cycles_of(tau);
        let first = which[last_block + ell - 1];
        if (last_block + ell - 1..self.d).any(|x| which[x] != first) {
            return None;
        }
        let mut rest: Vec<u8> = lens.iter().enumerate().filter(|&(c, _)| c as u8 != first).map(|(_, &l)| l).collect();
        rest.sort_unstable_by(|a, b| b.cmp(a));
        let i = self.index[&(lens[first as usize], part_key(&rest))];
        Some(i * self.a as u32 + ell as u32 - 1)
    }
}

/// Number of transpositions `2g − 2 + n + c(σ₀)`, if it is a non-negative integer.
pub fn steps(a: usize, g: usize, n: usize, degree: usize) -> Option<usize> {
    if a == 0 || !degree.is_multiple_of(a) {
        return None;
    }
    let m = 2 * g as i64 - 2 + n as i64 + (degree / a) as i64;
    (m >= 0).then_some(m as usize)
}

/// Exact counter of factorisations; search memos are kept between queries.
pub struct Oracle {
    budget: Budget,
    plain: FxHashMap<(bool, usize, usize), Searcher<CycleTypeClass>>,
    refined: FxHashMap<(usize, usize), Searcher<RefinedClass>>,
    order: Composition,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new(Budget::default())
    }
}

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Oracle { budget, plain: FxHashMap::default(), refined: FxHashMap::default(), order: Composition::REPO }
    }

    /// An oracle reading products in the given order. Only the refined
    /// counts depend on it.
    pub fn with_composition(budget: Budget, order: Composition) -> Self {
        Oracle { order, ..Self::new(budget) }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Total number of memoised search states.
    pub fn states(&self) -> usize {
        self.plain.values().map(|s| s.states()).sum::<usize>()
            + self.refined.values().map(|s| s.states()).sum::<usize>()
    }

    fn check_budget(&self, d: usize, m: usize) -> Result<()> {
        if d > self.budget.max_degree || m > self.budget.max_steps {
            return Err(Error::BudgetExceeded(format!(
                "degree {d} with {m} transpositions exceeds degree {} / {} transpositions",
                self.budget.max_degree, self.budget.max_steps
            )));
        }
        Ok(())
    }

    /// `H = #{qualifying tuples}/|μ|!` for the given flavor.
    pub fn count(&mut self, flavor: Flavor, a: usize, g: usize, mu: &[usize], mode: Mode) -> Result<BigRational> {
        if mu.is_empty() || mu.contains(&0) {
            return Err(Error::InvalidInput("μ must be a non-empty tuple of positive parts".into()));
        }
        let a = if flavor.is_orbifold() { a } else { 1 };
        if a == 0 {
            return Err(Error::InvalidInput("a must be positive".into()));
        }
        let d: usize = mu.iter().sum();
        let Some(m) = steps(a, g, mu.len(), d) else { return Ok(BigRational::zero()) };
        self.check_budget(d, m)?;
        let k = d / a;
        let (monotone, order, max_states) = (flavor.is_monotone(), self.order, self.budget.max_states);
        let searcher = match self.plain.entry((monotone, a, d)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(Searcher::new(d, monotone, order, CycleTypeClass::new(d, true), max_states)?)
            }
        };
        let Some(class) = searcher.classifier().class_of(mu, true) else { return Ok(BigRational::zero()) };
        let tuples = match mode {
            Mode::FixedSigma0 => {
                let n = searcher.counts(&Permutation::special_sigma0(a, k), m)?[class as usize];
                // times the class size d!/(a^k k!), over d!
                let class_size = factorial(d as u64) / (BigInt::from(a).pow(k as u32) * factorial(k as u64));
                BigInt::from(n) * class_size
            }
            Mode::Free => {
                let mut total = BigInt::zero();
                for s0 in Permutation::of_cycle_type(d, &vec![a; k]) {
                    total += searcher.counts(&s0, m)?[class as usize];
                }
                total
            }
        };
        Ok(BigRational::new(tuples * labellings(mu), factorial(d as u64)))
    }

    /// Monotone orbifold number `H^[a]_{g,n}(μ)` with the fixed special `σ₀`.
    pub fn hurwitz(&mut self, a: usize, g: usize, mu: &[usize]) -> Result<BigRational> {
        self.count(Flavor::MonotoneOrbifold, a, g, mu, Mode::FixedSigma0)
    }

    /// Refined number `H^{[a],ℓ}_{g,n}(μ₁ | rest)`: refined factorisations
    /// with the special `σ₀` over `a^k k!`.
    pub fn refined(&mut self, a: usize, g: usize, mu1: usize, ell: usize, rest: &[usize]) -> Result<BigRational> {
        if a == 0 || mu1 == 0 || rest.contains(&0) || !(1..=a).contains(&ell) {
            return Err(Error::InvalidInput(format!("bad refined key a={a} μ₁={mu1} ℓ={ell} rest={rest:?}")));
        }
        let d = mu1 + rest.iter().sum::<usize>();
        let Some(m) = steps(a, g, rest.len() + 1, d) else { return Ok(BigRational::zero()) };
        self.check_budget(d, m)?;
        let k = d / a;
        let (order, max_states) = (self.order, self.budget.max_states);
        let searcher = match self.refined.entry((a, d)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(Searcher::new(d, true, order, RefinedClass::new(a, d), max_states)?)
            }
        };
        let class = searcher.classifier().class_of(mu1, rest, ell).expect("valid refined class");
        let n = searcher.counts(&Permutation::special_sigma0(a, k), m)?[class as usize];
        let norm = BigInt::from(a).pow(k as u32) * factorial(k as u64);
        Ok(BigRational::new(BigInt::from(n) * labellings(rest), norm))
    }
}

/// One-shot [`Oracle::count`] with the default budget.
pub fn count_factorisations(flavor: Flavor, a: usize, g: usize, mu: &[usize], mode: Mode) -> Result<BigRational> {
    Oracle::default().count(flavor, a, g, mu, mode)
}

/// One-shot [`Oracle::refined`] with the default budget.
pub fn count_refined(a: usize, g: usize, mu1: usize, ell: usize, rest: &[usize]) -> Result<BigRational> {
    Oracle::default().refined(a, g, mu1, ell, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn small_values() {
        let mut o = Oracle::default();
        assert_eq!(o.hurwitz(2, 0, &[2]).unwrap(), ratio(1, 2));
        assert_eq!(o.hurwitz(1, 0, &[1, 1]).unwrap(), int(1));
        assert_eq!(o.hurwitz(1, 0, &[3]).unwrap(), ratio(2, 3));
        assert_eq!(o.hurwitz(2, 0, &[3]).unwrap(), int(0));
        assert_eq!(o.hurwitz(2, 0, &[4]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn refined_small_values() {
        let mut o = Oracle::default();
        for a in 1..=4 {
            for ell in 1..=a {
                let want = if ell == 1 { ratio(1, a as i64) } else { int(0) };
                assert_eq!(o.refined(a, 0, a, ell, &[]).unwrap(), want);
            }
        }
        assert_eq!(o.refined(1, 0, 2, 1, &[]).unwrap(), ratio(1, 2));
        assert_eq!(o.refined(2, 0, 4, 1, &[]).unwrap(), ratio(1, 4));
        assert_eq!(o.refined(2, 0, 4, 2, &[]).unwrap(), ratio(1, 4));
    }

    #[test]
    fn free_and_fixed_modes_agree() {
        let mut o = Oracle::default();
        for flavor in [Flavor::Simple, Flavor::Orbifold, Flavor::Monotone, Flavor::MonotoneOrbifold] {
            for (a, g, mu) in
                [(2, 0, vec![2, 2]), (2, 0, vec![3, 1]), (1, 0, vec![2, 1]), (3, 0, vec![2, 1]), (2, 1, vec![2])]
            {
                let free = o.count(flavor, a, g, &mu, Mode::Free).unwrap();
                let fixed = o.count(flavor, a, g, &mu, Mode::FixedSigma0).unwrap();
                assert_eq!(free, fixed, "{flavor:?} a={a} g={g} μ={mu:?}");
            }
        }
    }

    #[test]
    fn simple_numbers() {
        // (1 2)(1 2) with two labellings, over 2!
        assert_eq!(count_factorisations(Flavor::Simple, 1, 0, &[1, 1], Mode::Free).unwrap(), int(1));
        // six ordered pairs of distinct transpositions in S_3 multiply to a 3-cycle
        assert_eq!(count_factorisations(Flavor::Simple, 1, 0, &[3], Mode::Free).unwrap(), int(1));
        assert_eq!(count_factorisations(Flavor::Simple, 1, 0, &[2], Mode::Free).unwrap(), ratio(1, 2));
    }

    #[test]
    fn budget_and_divisibility() {
        let mut o = Oracle::new(Budget { max_degree: 4, ..Budget::default() });
        assert!(matches!(o.hurwitz(1, 0, &[5]), Err(Error::BudgetExceeded(_))));
        assert_eq!(o.hurwitz(3, 0, &[2, 2]).unwrap(), int(0));
    }

    #[test]
    fn refined_counts_depend_on_composition_order() {
        let mut ltr = Oracle::default();
        let mut rtl = Oracle::with_composition(Budget::default(), Composition::RightToLeft);
        assert_eq!(ltr.refined(3, 4, 4, 2, &[2]).unwrap(), ratio(683903, 6));
        assert_eq!(rtl.refined(3, 4, 4, 2, &[2]).unwrap(), ratio(175285, 3));
        // plain numbers do not see the order
        assert_eq!(ltr.hurwitz(3, 4, &[4, 2]).unwrap(), rtl.hurwitz(3, 4, &[4, 2]).unwrap());
    }
}
