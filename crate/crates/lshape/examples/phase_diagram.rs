//! Rate function over the scaled triangle: region tags and phi values on
//! a coarse grid, CSV on stdout. Pipe into a plotting tool to see the
//! frozen region and the arctic arc.
//!
//!     cargo run --example phase_diagram > phase.csv

use lshape::asympt::{alpha_c, classify_point, rate_phi, ScaledPoint, ARC_TOL};

fn main() -> Result<(), lshape::Error> {
    let alpha = 0.5;
    println!("x,y,region,alpha_c,phi");
    let n = 40;
    for i in 0..n {
        for j in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            let y = (j as f64 + 0.5) / n as f64;
            if y > x || y > 1.0 - x {
                continue;
            }
            let p = ScaledPoint::new(x, y)?;
            let region = classify_point(&p, alpha, ARC_TOL);
            let phi = rate_phi(&p, alpha)?;
            println!("{x},{y},{region},{},{phi}", alpha_c(&p));
        }
    }
    Ok(())
}
