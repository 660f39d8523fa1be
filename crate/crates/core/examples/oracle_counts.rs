//! Brute-force factorisation counts for the four flavours, and the
//! conjugacy-class rescaling of the fixed-σ₀ mode.

use hurwitz_core::algebra::rational::to_string;
use hurwitz_core::oracle::{Budget, Flavor, Mode, Oracle};

fn main() -> hurwitz_core::Result<()> {
    let mut oracle = Oracle::new(Budget::default());
    for flavor in [Flavor::Simple, Flavor::Orbifold, Flavor::Monotone, Flavor::MonotoneOrbifold] {
        for (a, g, mu) in [(2usize, 0usize, vec![2usize, 2]), (2, 1, vec![4]), (3, 0, vec![3, 3])] {
            let free = oracle.count(flavor, a, g, &mu, Mode::Free)?;
            let fixed = oracle.count(flavor, a, g, &mu, Mode::FixedSigma0)?;
            println!("{flavor:?} a={a} g={g} mu={mu:?}: {} (free) {} (fixed)", to_string(&free), to_string(&fixed));
        }
    }
    println!("refined a=3 g=0 (2 | 1) l=2: {}", to_string(&oracle.refined(3, 0, 2, 2, &[1])?));
    println!("memoised states: {}", oracle.states());
    Ok(())
}
