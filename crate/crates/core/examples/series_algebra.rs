//! Truncated power series over the rationals: the inverse of x(z) = z(1 − z²)
//! by reversion, and a round trip through composition.

use hurwitz_core::algebra::rational::{int, to_string};
use hurwitz_core::algebra::{PowerSeries, Var};

fn main() -> hurwitz_core::Result<()> {
    let order = 9;
    let x = PowerSeries::from_coeffs(Var::Z, order, vec![int(0), int(1), int(0), int(-1)]);
    let z = x.reversion(order)?;
    let shown: Vec<String> = z.coeffs().iter().map(to_string).collect();
    println!("z(x) = [{}] + O(x^{})", shown.join(", "), order + 1);
    let back = x.compose(&z)?;
    println!("x(z(x)) = [{}]", back.coeffs().iter().map(to_string).collect::<Vec<_>>().join(", "));
    Ok(())
}
