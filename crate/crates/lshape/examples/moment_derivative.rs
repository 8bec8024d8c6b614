//! The first moment of the equilibrium measure, recovered from exact
//! finite-size data: (1/s^2) d log I / d log alpha approaches E as the
//! gas grows.
//!
//!     cargo run --example moment_derivative

use lshape::harness::moment_derivative_check;
use lshape::scalar::exact_from_str;

fn main() -> Result<(), lshape::Error> {
    let ap = exact_from_str("9/16")?;
    let am = exact_from_str("4/9")?;
    println!("central difference between alpha = 9/16 and 4/9 (log-symmetric around 1/2)");
    for (label, r, q) in [("Regime I ", 10.0, 0.0), ("Regime II", 4.0, 0.0)] {
        println!("\n{label} (R = {r}, Q = {q}):");
        for s in [10u32, 20, 40] {
            let mc = moment_derivative_check(r, q, &ap, &am, s)?;
            println!(
                "  s = {s:>3}: lhs = {:.6}, E = {:.6}, rel dev = {:.4}",
                mc.lhs, mc.rhs, mc.reldev
            );
        }
    }
    Ok(())
}
