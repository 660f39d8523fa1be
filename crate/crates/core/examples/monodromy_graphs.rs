//! Monodromy graphs of monotone factorisations and the multiplicity check.

use hurwitz_core::oracle::graph::{build_monodromy_graph, graph_multiplicity, verify_multiplicity_lemma};
use hurwitz_core::oracle::Oracle;

fn main() -> hurwitz_core::Result<()> {
    // σ₀ = (12)(34), then (2 3), (1 4)
    let graph = build_monodromy_graph(2, 2, &[(2, 3), (1, 4)])?;
    println!("{}", graph.canonical());
    println!("multiplicity {}", graph_multiplicity(&graph)?);

    let mut oracle = Oracle::default();
    let report = verify_multiplicity_lemma(2, 0, &[1, 1, 2], &mut oracle)?;
    for t in &report.graphs {
        println!("{}  factorisations {}  m {}", t.canonical, t.factorisations, t.multiplicity);
    }
    println!("total {} expected {} passed {}", report.total, report.expected_total, report.passed());
    Ok(())
}
