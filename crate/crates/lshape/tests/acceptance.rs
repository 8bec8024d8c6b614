//! Acceptance suite: every release criterion runs here at its pinned
//! tolerance, printing one pass/fail line per criterion
//! (`cargo test --test acceptance -- --nocapture` to watch).

use std::time::{Duration, Instant};

use lshape::harness::{
    self, convergence_scan, cubic_coeff_fd_oracle, moment_derivative_check, transition_fit,
    RoundingRule, Suite, VerifyReport,
};
use num::rational::BigRational;

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Default)]
struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn criterion(&mut self, idx: u32, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {idx} {verdict}  {detail}");
        if !pass {
            self.failures.push(format!("criterion {idx}: {detail}"));
        }
    }
}

fn checks<'a>(report: &'a VerifyReport, names: &[&str]) -> Vec<&'a harness::Check> {
    names
        .iter()
        .map(|n| {
            report
                .checks
                .iter()
                .find(|c| c.name == *n)
                .unwrap_or_else(|| panic!("missing check {n}"))
        })
        .collect()
}

fn all_pass(list: &[&harness::Check]) -> bool {
    list.iter().all(|c| c.pass)
}

fn worst(list: &[&harness::Check]) -> f64 {
    list.iter().map(|c| c.residual).fold(0.0, f64::max)
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::default();

    // 1. exact oracle equivalence over the full small-size grid
    let t0 = Instant::now();
    let exact = harness::verify(Suite::Exactcore, 1.0).expect("exactcore suite");
    let t_exact = t0.elapsed();
    let c1 = checks(&exact, &["exactcore/oracle-equivalence"]);
    gate.criterion(
        1,
        all_pass(&c1) && t_exact <= Duration::from_secs(60),
        format!(
            "efp_hankel = coulomb_sum_oracle as exact rationals, r<=6 s<=3 q<=3, 4 biases \
             ({} mismatches, {:.1?} <= 60s)",
            c1[0].residual, t_exact
        ),
    );

    // 2. limits: F(alpha=0) = 1 exactly; alpha -> 1 coefficient
    let c2 = checks(
        &exact,
        &[
            "exactcore/alpha0-normalization",
            "exactcore/alpha1-hahn-coefficient",
        ],
    );
    gate.criterion(
        2,
        all_pass(&c2),
        format!(
            "F = 1 at alpha = 0 ({} deviations); |F/((1-a)^s(s+q) Hahn coeff) - 1| = {:.2e} <= 1e-3 \
             at alpha = 1 - 1e-5",
            c2[0].residual, c2[1].residual
        ),
    );

    // 3. eta solver agreement, residuals, and the arc limit
    let asym = harness::verify(Suite::Asympt, 1.0).expect("asympt suite");
    let c3 = checks(
        &asym,
        &[
            "asympt/eta-closed-vs-bisection",
            "asympt/eta-equation-residual",
            "asympt/eta-equals-h-on-arc",
        ],
    );
    gate.criterion(
        3,
        all_pass(&c3),
        format!(
            "1000 D_II darts: |closed - bisect| = {:.2e} <= 1e-10, residual = {:.2e} <= 1e-10; \
             arc: |eta - h| = {:.2e} <= 1e-10",
            c3[0].residual, c3[1].residual, c3[2].residual
        ),
    );

    // 4. the limiting rate function
    let c4 = checks(
        &asym,
        &[
            "asympt/rate-zero-in-di",
            "asympt/rate-vanishes-near-arc",
            "asympt/rate-positive-in-dii",
            "asympt/chi-identity-at-h",
        ],
    );
    gate.criterion(
        4,
        all_pass(&c4),
        format!(
            "phi = 0 in D_I; |phi| <= 1e-9 just above 100 arc points (got {:.2e}); phi > 0 at \
             1000 D_II points; |chi(h) - chi_0| = {:.2e} <= 1e-12",
            c4[1].residual, c4[3].residual
        ),
    );

    // 5. band end-points in both regimes
    let eqm = harness::verify(Suite::Eqmeasure, 1.0).expect("eqmeasure suite");
    let c5 = checks(
        &eqm,
        &[
            "eqmeasure/regime1-endpoint-residuals",
            "eqmeasure/regime2-endpoint-residuals",
            "eqmeasure/regime2-eta-crosscheck",
        ],
    );
    gate.criterion(
        5,
        all_pass(&c5),
        format!(
            "Regime I residual {:.2e} <= 1e-12; 200 Regime II triples: residual {:.2e} <= 1e-10, \
             explicit eta vs bisection {:.2e} <= 1e-10",
            c5[0].residual, c5[1].residual, c5[2].residual
        ),
    );

    // 6. equilibrium measure consistency
    let c6 = checks(
        &eqm,
        &[
            "eqmeasure/density-bounds",
            "eqmeasure/normalization",
            "eqmeasure/first-moment-quadrature",
            "eqmeasure/wwv-residual",
            "eqmeasure/first-moment-large-z",
        ],
    );
    gate.criterion(
        6,
        all_pass(&c6),
        format!(
            "bounds ({} violations); normalization {:.2e} <= 1e-8; moment quadrature {:.2e} <= \
             1e-8; variational residual {:.2e} <= 1e-3 decreasing in eps; large-z moment {:.2e} \
             <= 1e-6",
            c6[0].residual,
            c6[1].residual,
            c6[2].residual,
            worst(&c6[3..4]),
            c6[4].residual
        ),
    );

    // 7. third-order transition at (1/4, 1/4)
    let t0 = Instant::now();
    let fit = transition_fit(0.25, 0.25, 0.25 + 1e-3, 0.25 + 5e-2, 30).expect("transition fit");
    let formula = fit.formula_coeff.expect("closed-form coefficient");
    let fd = cubic_coeff_fd_oracle(0.25, 0.25, 2e-4).expect("fd oracle");
    let below = harness::rate_at(0.25, 0.25, 0.25 - 1e-3).expect("below-critical rate");
    let t_fit = t0.elapsed();
    let exponent_ok = (fit.exponent - 3.0).abs() <= 0.05;
    let amplitude_ok = (fit.amplitude - formula).abs() / formula <= 0.02;
    let oracle_ok = (fd - formula).abs() / formula <= 0.02;
    let below_ok = below.abs() <= 1e-12;
    gate.criterion(
        7,
        exponent_ok && amplitude_ok && oracle_ok && below_ok && t_fit <= Duration::from_secs(30),
        format!(
            "exponent {:.3} = 3.00 +- 0.05; amplitude {:.4} within 2% of C = {:.4} (fd oracle \
             {:.4}); phi = {:.1e} below alpha_c ({:.1?} <= 30s)",
            fit.exponent, fit.amplitude, formula, fd, below, t_fit
        ),
    );

    // 8. finite-size convergence and the gas-mapping adjudication
    let t0 = Instant::now();
    let scan = convergence_scan(
        0.25,
        0.25,
        &rat(1, 2),
        &[32, 64, 128],
        None,
        RoundingRule::Nearest,
    )
    .expect("convergence scan");
    let gaps: Vec<f64> = scan.rows.iter().map(|r| r.gap).collect();
    let decreasing = gaps.windows(2).all(|w| w[1].abs() < w[0].abs());
    let extra_ok = (scan.extrapolated - scan.phi_limit).abs() / scan.phi_limit <= 1e-2;
    let points: [(f64, f64, u64, u64); 5] = [
        (0.25, 0.25, 1, 2),
        (0.3, 0.2, 1, 2),
        (0.35, 0.3, 3, 5),
        (0.2, 0.15, 7, 10),
        (0.4, 0.35, 1, 2),
    ];
    let mut winners_direct = 0;
    for (x, y, n, d) in points {
        let s = convergence_scan(x, y, &rat(n, d), &[40, 60, 80], None, RoundingRule::Nearest)
            .expect("adjudication scan");
        if s.mapping.expect("D_II point").direct_wins {
            winners_direct += 1;
        }
    }
    let t_conv = t0.elapsed();
    gate.criterion(
        8,
        decreasing && extra_ok && winners_direct == 5 && t_conv <= Duration::from_secs(600),
        format!(
            "gaps {gaps:?} strictly decreasing; extrapolation {:.6e} within 1% of phi = \
             {:.6e}; direct gas mapping wins at {winners_direct}/5 points ({:.1?} <= 10min)",
            scan.extrapolated, scan.phi_limit, t_conv
        ),
    );

    // 9. moment derivative at s = 40
    let (ap, am) = (rat(9, 16), rat(4, 9));
    let reg1 = moment_derivative_check(10.0, 0.0, &ap, &am, 40).expect("regime I moment");
    let reg2 = moment_derivative_check(4.0, 0.0, &ap, &am, 40).expect("regime II moment");
    gate.criterion(
        9,
        reg1.reldev <= 0.02 && reg2.reldev <= 0.05,
        format!(
            "(1/s^2) dlogI/dlogalpha at s=40: Regime I dev {:.4} <= 2%, Regime II dev {:.4} <= 5%",
            reg1.reldev, reg2.reldev
        ),
    );

    assert!(
        gate.failures.is_empty(),
        "failed criteria:\n{}",
        gate.failures.join("\n")
    );
}
