//! The eta root of the quartic saddle-point equation: explicit
//! trigonometric form against bisection, across the bias range.
//!
//!     cargo run --example eta_methods

use lshape::asympt::{alpha_c, eta_root, h_param, EtaMethod, ScaledPoint};

fn main() -> Result<(), lshape::Error> {
    let p = ScaledPoint::new(0.3, 0.2)?;
    let ac = alpha_c(&p);
    println!(
        "point ({}, {}): alpha_c = {ac}, h = {}",
        p.x,
        p.y,
        h_param(&p)?
    );
    println!(
        "{:>10}  {:>22}  {:>22}  {:>10}  {:>10}",
        "alpha", "eta (closed)", "eta (bisect)", "|diff|", "residual"
    );
    for k in 1..=12 {
        let alpha = ac + (1.0 - 1e-6 - ac) * k as f64 / 12.0;
        let closed = eta_root(&p, alpha, EtaMethod::ClosedForm)?;
        let bisect = eta_root(&p, alpha, EtaMethod::Bisection)?;
        println!(
            "{:>10.6}  {:>22.16}  {:>22.16}  {:>10.2e}  {:>10.2e}",
            alpha,
            closed.eta,
            bisect.eta,
            (closed.eta - bisect.eta).abs(),
            closed.residual
        );
    }
    println!("\non the arc (alpha = alpha_c) the root collapses onto h:");
    let on_arc = eta_root(&p, ac, EtaMethod::Both)?;
    println!("eta = {}, h = {}", on_arc.eta, h_param(&p)?);
    Ok(())
}
