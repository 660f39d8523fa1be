//! Extensional checks on monotone factorisation counts: independence of the
//! starting permutation within its conjugacy class, and the Stirling count
//! of unconstrained monotone sequences.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::count::Budget;
use super::permutation::{Composition, Permutation};
use super::search::Searcher;
use super::CycleTypeClass;
use crate::combinat::{partitions, sorted_desc, stirling2};
use crate::error::{Error, Result};

/// `K•` and `K°` for one starting permutation, indexed like [`partitions`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassCounts {
    pub sigma_type: Vec<usize>,
    pub permutations: usize,
    /// Common value per target type μ, as `(μ, K•, K°)`; absent when they differ.
    pub values: Vec<(Vec<usize>, u64, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub input: serde_json::Value,
    /// Number of monotone factorisations enumerated over all starting
    /// permutations (restricted to μ when given).
    pub count: String,
    pub mode: &'static str,
    pub classes: Vec<ClassCounts>,
    pub violations: Vec<String>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every cycle type λ of `S_d` and every σ of type λ, counts monotone
/// `σσ₁⋯σ_m = τ` by the cycle type of τ, with and without transitivity, and
/// reports every σ whose counts differ from the first σ of its type.
pub fn check_cycle_type_independence(
    d: usize,
    m: usize,
    mu: Option<&[usize]>,
    budget: Budget,
) -> Result<IndependenceReport> {
    if d == 0 || d > budget.max_degree || m > budget.max_steps {
        return Err(Error::BudgetExceeded(format!("degree {d} with {m} transpositions is outside the budget")));
    }
    let targets = partitions(d);
    let wanted: Option<Vec<usize>> = mu.map(sorted_desc);
    if let Some(w) = &wanted {
        if w.iter().sum::<usize>() != d || w.contains(&0) {
            return Err(Error::InvalidInput(format!("μ = {w:?} is not a partition of {d}")));
        }
    }
    let classifier = CycleTypeClass::new(d, false);
    let mut search = Searcher::new(d, true, Composition::REPO, classifier, budget.max_states)?;
    let mut violations = Vec::new();
    let mut classes = Vec::new();
    let mut total = BigInt::from(0);
    for lambda in partitions(d) {
        let perms = Permutation::of_cycle_type(d, &lambda);
        let mut reference: Option<(Permutation, Vec<u64>)> = None;
        let mut consistent = true;
        for sigma in &perms {
            let counts = search.counts(sigma, m)?;
            for (i, t) in targets.iter().enumerate() {
                if wanted.as_ref().is_none_or(|w| w == t) {
                    total += counts[2 * i] + counts[2 * i + 1];
                }
            }
            let Some((first, base)) = &reference else {
                reference = Some((sigma.clone(), counts));
                continue;
            };
            for (i, t) in targets.iter().enumerate() {
                if wanted.as_ref().is_some_and(|w| w != t) {
                    continue;
                }
                let (b_all, b_con) = (base[2 * i] + base[2 * i + 1], base[2 * i + 1]);
                let (c_all, c_con) = (counts[2 * i] + counts[2 * i + 1], counts[2 * i + 1]);
                if (b_all, b_con) != (c_all, c_con) {
                    consistent = false;
                    violations.push(format!(
                        "type {lambda:?}, μ = {t:?}: {first} gives K•={b_all} K°={b_con}, {sigma} gives K•={c_all} K°={c_con}"
                    ));
                }
            }
        }
        let values = match (&reference, consistent) {
            (Some((_, base)), true) => targets
                .iter()
                .enumerate()
                .filter(|(_, t)| wanted.as_ref().is_none_or(|w| w == *t))
                .map(|(i, t)| (t.clone(), base[2 * i] + base[2 * i + 1], base[2 * i + 1]))
                .collect(),
            _ => Vec::new(),
        };
        classes.push(ClassCounts { sigma_type: lambda, permutations: perms.len(), values });
    }
    Ok(IndependenceReport {
        input: serde_json::json!({"d": d, "m": m, "mu": wanted}),
        count: total.to_string(),
        mode: "free",
        classes,
        violations,
    })
}

/// Number of monotone sequences of `m` transpositions in `S_d`.
pub fn count_monotone_sequences(d: usize, m: usize, budget: Budget) -> Result<BigInt> {
    let mut search = Searcher::new(d, true, Composition::REPO, CycleTypeClass::new(d, false), budget.max_states)?;
    let counts = search.counts(&Permutation::identity(d), m)?;
    Ok(counts.iter().map(|&c| BigInt::from(c)).sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct StirlingCountReport {
    pub input: serde_json::Value,
    pub rows: BTreeMap<String, (String, String)>,
    pub violations: Vec<String>,
}

/// Compares [`count_monotone_sequences`] with `S(d+m−1, d−1)`.
pub fn check_stirling_counts(max_d: usize, max_m: usize, budget: Budget) -> Result<StirlingCountReport> {
    let mut rows = BTreeMap::new();
    let mut violations = Vec::new();
    for d in 2..=max_d {
        for m in 0..=max_m {
            let seen = count_monotone_sequences(d, m, budget)?;
            let want = stirling2(d + m - 1, d - 1);
            if seen != want {
                violations.push(format!("d={d} m={m}: {seen} sequences, S({}, {}) = {want}", d + m - 1, d - 1));
            }
            rows.insert(format!("d={d} m={m}"), (seen.to_string(), want.to_string()));
        }
    }
    Ok(StirlingCountReport { input: serde_json::json!({"max_d": max_d, "max_m": max_m}), rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycles_in_s3() {
        let r = check_cycle_type_independence(3, 1, Some(&[2, 1]), Budget::default()).unwrap();
        assert!(r.passed());
        let three = r.classes.iter().find(|c| c.sigma_type == vec![3]).unwrap();
        assert_eq!(three.permutations, 2);
        // (123)(r s) is a transposition for each of the three choices
        assert_eq!(three.values, vec![(vec![2, 1], 3, 3)]);
    }

    #[test]
    fn s2_is_vacuous_and_s4_double_transpositions_agree() {
        assert!(check_cycle_type_independence(2, 3, None, Budget::default()).unwrap().passed());
        let r = check_cycle_type_independence(4, 2, Some(&[4]), Budget::default()).unwrap();
        assert!(r.passed());
        let c = r.classes.iter().find(|c| c.sigma_type == vec![2, 2]).unwrap();
        assert_eq!(c.permutations, 3);
        assert_eq!(c.values.len(), 1);
    }

    #[test]
    fn stirling_small() {
        assert_eq!(count_monotone_sequences(3, 1, Budget::default()).unwrap(), BigInt::from(3));
        assert!(check_stirling_counts(4, 4, Budget::default()).unwrap().violations.is_empty());
    }

    #[test]
    fn rejects_foreign_partition() {
        assert!(check_cycle_type_independence(3, 1, Some(&[2, 2]), Budget::default()).is_err());
    }
}
