//! Partitions, compositions and Stirling numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::algebra::rational::factorial;

/// Partitions of `n` as non-increasing part lists, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into exactly `parts` positive parts.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in 1..=n.saturating_sub(parts - 1) {
            cur.push(p);
            go(n - p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

/// `∏_j m_j!` where `m_j` counts parts equal to `j`: the number of ways to
/// label the cycles of a permutation of cycle type `parts` so that cycle `i`
/// has length `parts[i]`.
pub fn labellings(parts: &[usize]) -> BigInt {
    let mut counts: FxHashMap<usize, u64> = FxHashMap::default();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts.values().map(|&m| factorial(m)).product()
}

pub fn sorted_desc(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Stirling numbers of the second kind by `S(n,k) = k·S(n−1,k) + S(n−1,k−1)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(6, 3).len(), 10);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(10, 4), BigInt::from(34105));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(4, 0), BigInt::from(0));
    }

    #[test]
    fn labelling_factor() {
        assert_eq!(labellings(&[2, 1, 1]), BigInt::from(2));
        assert_eq!(labellings(&[1, 1, 1, 2, 2]), BigInt::from(12));
    }
}
