//! Correlators of the spectral curve x = z(1 − z^a), y = z^{a−1}/(z^a − 1)
//! against the cut-and-join numbers.

use hurwitz_core::cutjoin::CutJoin;
use hurwitz_core::toprec::{branch_points, check_conjecture, check_spectral_from_f01};

fn main() -> hurwitz_core::Result<()> {
    for z in branch_points(3, 128)? {
        let (re, im) = z.to_f64_pair();
        println!("branch point {re:+.12} {im:+.12}i");
    }
    println!("spectral curve from F01, a=3: {}", check_spectral_from_f01(3, 8)?.passed());
    let cj = CutJoin::new();
    let rep = check_conjecture(1, 1, 3, 6, 512, &cj)?;
    for e in &rep.entries {
        println!("mu={:?} tr={} cutjoin={} exact={}", e.mu, e.tr, e.cutjoin, e.exact);
    }
    let rep = check_conjecture(0, 3, 2, 4, 256, &cj)?;
    println!("(0,3) a=2: {} entries, passed {}", rep.entries.len(), rep.passed());
    Ok(())
}
