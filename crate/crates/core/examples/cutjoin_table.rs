//! Monotone orbifold numbers from the cut-and-join recursion, persisted to a
//! cache file and read back.

use hurwitz_core::algebra::rational::to_string;
use hurwitz_core::combinat::partitions;
use hurwitz_core::cutjoin::{closed_form_01, CutJoin};

fn main() -> hurwitz_core::Result<()> {
    let path = std::env::temp_dir().join("hurwitz-example-cache.txt");
    let cj = CutJoin::open(&path)?;
    let a = 2;
    for g in 0..=1 {
        for d in (a..=8).step_by(a) {
            for mu in partitions(d) {
                println!("H[{a}]_{g}({mu:?}) = {}", to_string(&cj.hurwitz(a, g, &mu)?));
            }
        }
    }
    println!(
        "H[3]_0(30) = {} (closed form {})",
        to_string(&cj.hurwitz(3, 0, &[30])?),
        to_string(&closed_form_01(3, 10))
    );
    cj.flush()?;
    let again = CutJoin::open(&path)?;
    again.hurwitz(a, 1, &[4, 2, 2])?;
    println!("evaluations after reload: {}", again.evaluations());
    Ok(())
}
