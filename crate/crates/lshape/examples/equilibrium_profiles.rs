//! Equilibrium densities of the discrete Coulomb gas in all four
//! regimes, with the resolvent-discontinuity oracle alongside the closed
//! arctan forms. CSV on stdout.
//!
//!     cargo run --example equilibrium_profiles > profiles.csv

use lshape::eqmeasure::{density_oracle, density_profile, endpoints, GasParams};

fn main() -> Result<(), lshape::Error> {
    println!("regime,R,Q,alpha,a,b,mu,rho_formula,rho_oracle");
    for (r, q, alpha) in [
        (10.0, 0.0, 0.5),
        (15.0, 3.0, 0.5),
        (4.0, 0.0, 0.5),
        (4.0, 3.0, 0.5),
    ] {
        let gas = GasParams::new(r, q, alpha)?;
        let sol = endpoints(&gas)?;
        for k in 0..=200 {
            let mu = gas.r * k as f64 / 200.0;
            let formula = density_profile(mu, &sol, &gas)?;
            let oracle = if mu > 0.0 && mu < gas.r {
                density_oracle(mu, 1e-8, &sol, &gas)?.to_string()
            } else {
                String::new()
            };
            println!(
                "{},{},{},{},{},{},{},{},{}",
                sol.regime, r, q, alpha, sol.a, sol.b, mu, formula, oracle
            );
        }
    }
    Ok(())
}
