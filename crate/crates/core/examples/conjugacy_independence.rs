//! Monotone counts do not depend on the starting permutation within its
//! conjugacy class, and unconstrained monotone sequences are counted by
//! Stirling numbers.

use hurwitz_core::oracle::lemma::{check_cycle_type_independence, check_stirling_counts};
use hurwitz_core::oracle::Budget;

fn main() -> hurwitz_core::Result<()> {
    let r = check_cycle_type_independence(4, 3, None, Budget::default())?;
    for c in &r.classes {
        println!("type {:?}: {} permutations, {} target types", c.sigma_type, c.permutations, c.values.len());
    }
    println!("violations: {}", r.violations.len());
    let s = check_stirling_counts(5, 5, Budget::default())?;
    for (k, (seen, want)) in s.rows.iter().take(8) {
        println!("{k}: {seen} sequences, Stirling {want}");
    }
    Ok(())
}
