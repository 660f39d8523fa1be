//! The ten acceptance criteria at their stated budgets, one line each.

use hurwitz_core::acceptance;
use hurwitz_core::cutjoin::CutJoin;

fn main() {
    let cj = CutJoin::new();
    let mut failed = 0;
    for id in 1..=10 {
        let r = acceptance::run(id, &cj);
        println!("{}", r.timed_line());
        for d in r.detail.iter().skip(1) {
            println!("    {d}");
        }
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
