//! Resolvent consistency across the four regimes: the variational
//! condition on the band, normalization and first-moment quadratures, and
//! the large-z extraction of the first moment.
//!
//!     cargo run --example resolvent_checks

use lshape::eqmeasure::GasParams;
use lshape::harness::{resolvent_consistency, resolvent_schwarz_dev};

fn main() -> Result<(), lshape::Error> {
    for (r, q, alpha) in [
        (10.0, 0.0, 0.5),
        (15.0, 3.0, 0.5),
        (4.0, 0.0, 0.5),
        (4.0, 3.0, 0.5),
    ] {
        let gas = GasParams::new(r, q, alpha)?;
        let rep = resolvent_consistency(&gas, &[1e-2, 1e-4, 1e-6], 1e6)?;
        println!("Regime {} (R = {r}, Q = {q}, alpha = {alpha}):", rep.regime);
        for (eps, res) in &rep.wwv {
            println!("  |2 Re W - V'| at eps = {eps:>7.0e}: {res:.3e}");
        }
        println!(
            "  normalization residual: {:.3e}",
            rep.normalization_residual
        );
        println!("  first-moment residual:  {:.3e}", rep.moment_residual);
        println!(
            "  large-z moment residual: {:.3e}",
            rep.tail_moment_residual
        );
        println!(
            "  Schwarz symmetry dev:    {:.3e}",
            resolvent_schwarz_dev(&gas, 50)?
        );
        println!("  pass: {}\n", rep.pass);
    }
    Ok(())
}
