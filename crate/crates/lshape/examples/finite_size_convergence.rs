//! Exact finite-size rates converging to the limit: phi_N = -log F / N^2
//! approaches phi(x, y) as N grows, and the extrapolation picks the
//! direct translation of the Coulomb-gas free energy.
//!
//!     cargo run --example finite_size_convergence

use lshape::harness::{convergence_scan, RoundingRule};
use lshape::scalar::exact_from_str;

fn main() -> Result<(), lshape::Error> {
    let alpha = exact_from_str("1/2")?;
    let scan = convergence_scan(
        0.25,
        0.25,
        &alpha,
        &[16, 24, 32, 48, 64],
        None,
        RoundingRule::Nearest,
    )?;
    println!("(x, y) = (1/4, 1/4), alpha = 1/2");
    println!(
        "{:>5} {:>5} {:>5} {:>5}  {:>22}  {:>12}",
        "N", "r", "s", "q", "phi_N", "gap"
    );
    for row in &scan.rows {
        println!(
            "{:>5} {:>5} {:>5} {:>5}  {:>22.16}  {:>12.3e}",
            row.n, row.r, row.s, row.q, row.phi_n, row.gap
        );
    }
    println!("\nextrapolated: {:.12}", scan.extrapolated);
    println!("limit rate:   {:.12}", scan.phi_limit);
    if let Some(m) = scan.mapping {
        println!(
            "gas-mapping adjudication: direct dev {:.2e}, scaled dev {:.2e} -> {}",
            m.direct_dev,
            m.scaled_dev,
            if m.direct_wins {
                "direct (factor 1) wins"
            } else {
                "scaled wins"
            }
        );
    }
    Ok(())
}
