//! Finite differences of normalised numbers on residue classes.

use hurwitz_core::cutjoin::CutJoin;
use hurwitz_core::structure::{c_factor_parts, describe, quasipoly_check};

fn main() -> hurwitz_core::Result<()> {
    let (b, f) = c_factor_parts(2, 3)?;
    println!("C factor parts for a=2, mu=3: {b}, {f}");
    let cj = CutJoin::new();
    for (a, g, n, bound) in [(1, 0, 3, 6), (1, 1, 1, 8), (2, 0, 3, 8), (2, 1, 1, 10)] {
        let rep = quasipoly_check(a, g, n, bound, &cj)?;
        print!("a={a} (g,n)=({g},{n}) bound {bound}: passed {}\n{}", rep.passed(), describe(&rep));
    }
    Ok(())
}
