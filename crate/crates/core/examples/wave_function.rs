//! The wave function from the numbers, its closed form, and the quantum curve.

use hurwitz_core::cutjoin::CutJoin;
use hurwitz_core::wavefunction::{
    check_quantum_curve, coefficient_table, differences, wavefunction_closed, wavefunction_from_numbers,
};

fn main() -> hurwitz_core::Result<()> {
    let (a, k, r) = (2, 2, 3);
    let cj = CutJoin::new();
    let from = wavefunction_from_numbers(a, k, r, &cj)?;
    let closed = wavefunction_closed(a, k, r);
    for (d, e, v) in coefficient_table(&closed) {
        println!("x^{d} hbar^{e}: {v}");
    }
    println!("differences: {:?}", differences(&from, &closed, r));
    let rep = check_quantum_curve(a, 4, 5);
    println!("quantum curve: vanishes below x^{}: {}", rep.boundary, rep.passed());
    Ok(())
}
