//! Depth-first search over transposition sequences, memoised on the partial
//! product.
//!
//! The state after some prefix `σ₁…σ_i` is the partial product `τ_i`, the
//! partition of `{1..d}` into orbits of `⟨σ₀, σ₁, …, σ_i⟩`, the largest
//! element `s_i` used so far (monotone case) and the number of steps left.
//! Everything the suffix can do depends only on that state, so the value of
//! a state is the vector of terminal-class counts reachable from it.

use std::rc::Rc;

use rustc_hash::FxHashMap;

use super::permutation::{Composition, Permutation};
use crate::error::{Error, Result};

/// Assigns each complete factorisation to an outcome class, or discards it.
pub(crate) trait Classifier {
    fn num_classes(&self) -> usize;

    /// Whether every accepted outcome has a single orbit; enables pruning.
    fn connected_only(&self) -> bool;

    /// `tau` and `orbits` are 0-based; `s_last` is the 0-based larger
    /// element of the last transposition, `None` when there is none.
    fn classify(&self, tau: &[u8], orbits: &[u8], s_last: Option<u8>) -> Option<u32>;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    tau: u64,
    orbits: u64,
    s_min: u8,
    rem: u8,
}

type Counts = Rc<[(u32, u64)]>;

pub(crate) struct Searcher<C> {
    d: usize,
    monotone: bool,
    order: Composition,
    classifier: C,
    memo: FxHashMap<Key, Counts>,
    max_states: usize,
}

fn pack(v: &[u8]) -> u64 {
    v.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << (4 * i))
}

fn unpack(p: u64, d: usize, out: &mut [u8; 16]) {
    for (i, slot) in out.iter_mut().enumerate().take(d) {
        *slot = ((p >> (4 * i)) & 0xf) as u8;
    }
}

/// Restricted-growth labelling of the cycles of `perm`.
pub(crate) fn cycle_labels(perm: &Permutation) -> Vec<u8> {
    let mut labels = vec![0u8; perm.degree()];
    for (c, cycle) in perm.cycles().iter().enumerate() {
        for &x in cycle {
            labels[x - 1] = c as u8;
        }
    }
    labels
}

impl<C: Classifier> Searcher<C> {
    pub fn new(d: usize, monotone: bool, order: Composition, classifier: C, max_states: usize) -> Result<Self> {
        if d == 0 || d > 16 {
            return Err(Error::InvalidInput(format!("degree {d} outside 1..=16")));
        }
        Ok(Searcher { d, monotone, order, classifier, memo: FxHashMap::default(), max_states })
    }

    pub fn classifier(&self) -> &C {
        &self.classifier
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }

    /// Outcome counts over all sequences of `m` transpositions after `start`.
    pub fn counts(&mut self, start: &Permutation, m: usize) -> Result<Vec<u64>> {
        if start.degree() != self.d {
            return Err(Error::InvalidInput("starting permutation has the wrong degree".into()));
        }
        let key = Key { tau: pack(start.images()), orbits: pack(&cycle_labels(start)), s_min: 0, rem: m as u8 };
        let sparse = self.dfs(key)?;
        let mut dense = vec![0u64; self.classifier.num_classes()];
        for &(c, n) in sparse.iter() {
            dense[c as usize] += n;
        }
        Ok(dense)
    }

    fn dfs(&mut self, key: Key) -> Result<Counts> {
        let d = self.d;
        let mut tau = [0u8; 16];
        let mut orbits = [0u8; 16];
        unpack(key.tau, d, &mut tau);
        unpack(key.orbits, d, &mut orbits);
        if key.rem == 0 {
            let s_last = if key.s_min == 0 { None } else { Some(key.s_min) };
            let c = self.classifier.classify(&tau[..d], &orbits[..d], s_last);
            return Ok(c.map(|c| vec![(c, 1u64)]).unwrap_or_default().into());
        }
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let n_orbits = orbits[..d].iter().max().map_or(0, |&m| m as usize + 1);
        if self.classifier.connected_only() && n_orbits - 1 > key.rem as usize {
            return Ok(Rc::from(Vec::new()));
        }
        if self.memo.len() >= self.max_states {
            return Err(Error::BudgetExceeded(format!("more than {} search states", self.max_states)));
        }
        let mut acc = vec![0u64; self.classifier.num_classes()];
        let s_from = if self.monotone { (key.s_min as usize).max(1) } else { 1 };
        for s in s_from..d {
            for r in 0..s {
                let mut t = tau;
                match self.order {
                    Composition::LeftToRight => {
                        for x in t[..d].iter_mut() {
                            if *x == r as u8 {
                                *x = s as u8;
                            } else if *x == s as u8 {
                                *x = r as u8;
                            }
                        }
                    }
                    Composition::RightToLeft => t.swap(r, s),
                }
                let mut o = orbits;
                let (lr, ls) = (o[r], o[s]);
                if lr != ls {
                    let (lo, hi) = (lr.min(ls), lr.max(ls));
                    for x in o[..d].iter_mut() {
                        if *x == hi {
                            *x = lo;
                        } else if *x > hi {
                            *x -= 1;
                        }
                    }
                }
                let child = Key {
                    tau: pack(&t[..d]),
                    orbits: pack(&o[..d]),
                    s_min: if self.monotone { s as u8 } else { 0 },
                    rem: key.rem - 1,
                };
                for &(c, n) in self.dfs(child)?.iter() {
                    acc[c as usize] += n;
                }
            }
        }
        let sparse: Counts = acc.iter().enumerate().filter(|(_, &n)| n > 0).map(|(c, &n)| (c as u32, n)).collect();
        self.memo.insert(key, sparse.clone());
        Ok(sparse)
    }
}

/// Visits every sequence of `m` transpositions (monotone if asked) after
/// `start`, handing the 1-based pairs and the final product to `visit`.
pub fn for_each_sequence<F>(start: &Permutation, m: usize, monotone: bool, order: Composition, mut visit: F)
where
    F: FnMut(&[(usize, usize)], &Permutation),
{
    fn go<F: FnMut(&[(usize, usize)], &Permutation)>(
        tau: &Permutation,
        seq: &mut Vec<(usize, usize)>,
        m: usize,
        monotone: bool,
        order: Composition,
        visit: &mut F,
    ) {
        if seq.len() == m {
            visit(seq, tau);
            return;
        }
        let d = tau.degree();
        let s_from = if monotone { seq.last().map_or(2, |&(_, s)| s) } else { 2 };
        for s in s_from..=d {
            for r in 1..s {
                let t = Permutation::transposition(d, r, s);
                let next = Permutation::product(&[tau.clone(), t], order);
                seq.push((r, s));
                go(&next, seq, m, monotone, order, visit);
                seq.pop();
            }
        }
    }
    go(start, &mut Vec::new(), m, monotone, order, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Everything;

    impl Classifier for Everything {
        fn num_classes(&self) -> usize {
            1
        }
        fn connected_only(&self) -> bool {
            false
        }
        fn classify(&self, _: &[u8], _: &[u8], _: Option<u8>) -> Option<u32> {
            Some(0)
        }
    }

    #[test]
    fn counts_all_monotone_sequences() {
        let mut s = Searcher::new(4, true, Composition::REPO, Everything, 1 << 20).unwrap();
        // h_2(1, 2, 3) = 1+4+9+2+3+6 = 25 = S(5, 3)
        assert_eq!(s.counts(&Permutation::identity(4), 2).unwrap(), vec![25]);
        let mut free = Searcher::new(4, false, Composition::REPO, Everything, 1 << 20).unwrap();
        assert_eq!(free.counts(&Permutation::identity(4), 2).unwrap(), vec![36]);
    }

    #[test]
    fn visitor_agrees_with_memoised_search() {
        let mut n = 0;
        for_each_sequence(&Permutation::identity(4), 3, true, Composition::REPO, |_, _| n += 1);
        let mut s = Searcher::new(4, true, Composition::REPO, Everything, 1 << 20).unwrap();
        assert_eq!(s.counts(&Permutation::identity(4), 3).unwrap(), vec![n]);
    }

    #[test]
    fn budget_is_enforced() {
        let mut s = Searcher::new(6, true, Composition::REPO, Everything, 10).unwrap();
        assert!(matches!(s.counts(&Permutation::identity(6), 5), Err(Error::BudgetExceeded(_))));
    }
}
