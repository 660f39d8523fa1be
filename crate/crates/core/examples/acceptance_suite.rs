//! Runs the acceptance criteria given on the command line (default: all).

use hurwitz_core::acceptance;
use hurwitz_core::cutjoin::CutJoin;

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=10).collect() } else { ids };
    let cj = CutJoin::new();
    for id in ids {
        println!("{}", acceptance::run(id, &cj).timed_line());
    }
}
