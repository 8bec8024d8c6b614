//! Cross-validation harness tying the exact finite-size data to the
//! asymptotic formulas: convergence scans in `N`, third-order transition
//! fits, moment-derivative checks, resolvent consistency reports, and the
//! named verification suites behind `lshape verify`.

use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asympt::{self, EtaMethod, GasMapping, RegionTag, ScaledPoint};
use crate::eqmeasure::{self, GasParams, Regime};
use crate::exactcore::{self, LshapeDims};
use crate::scalar::{ln_rational, RealScalar};
use crate::{Error, Result};

/// How scaled coordinates round to integer dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingRule {
    /// Nearest integer (less O(1/N) bias than flooring).
    #[default]
    Nearest,
    /// Floor, matching the `[xN]` convention of the limit definitions.
    Floor,
}

/// Integer dimensions for the scaled point `(x, y)` at lattice size `n`:
/// `s ~ yN`, `s + q ~ xN`, `r = N - s - q`.
pub fn scaled_dims(x: f64, y: f64, n: u32, rule: RoundingRule) -> Result<LshapeDims> {
    let to_int = |v: f64| -> i64 {
        match rule {
            RoundingRule::Nearest => v.round() as i64,
            RoundingRule::Floor => v.floor() as i64,
        }
    };
    let s = to_int(y * n as f64).max(0);
    let q = (to_int(x * n as f64) - s).max(0);
    let r = n as i64 - s - q;
    if r < 1 {
        return Err(Error::InvalidDims(format!(
            "rounding ({x}, {y}) at N = {n} leaves r = {r}"
        )));
    }
    LshapeDims::new(r as u32, s as u32, q as u32)
}

/// One finite-size sample of the rate: `phi_N = -log F / N^2` and its gap
/// to the limiting rate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub q: u32,
    pub phi_n: f64,
    pub gap: f64,
}

/// Largest supported lattice size for finite-size scans.
pub const N_MAX: u32 = 256;

/// Exact-rational evaluation for `N <= 128`; extended-precision real
/// arithmetic above (at `prec_bits`, defaulting per [`default_prec_bits`]).
/// Sizes beyond [`N_MAX`] are rejected.
pub fn finite_size_phi(
    x: f64,
    y: f64,
    alpha: &BigRational,
    n: u32,
    prec_bits: usize,
    rule: RoundingRule,
) -> Result<ConvergenceRow> {
    if n > N_MAX {
        return Err(Error::InvalidDims(format!(
            "N = {n} exceeds N_MAX = {N_MAX}"
        )));
    }
    let dims = scaled_dims(x, y, n, rule)?;
    let ln_f = if n <= 128 {
        exactcore::efp_ln(&dims, alpha)?
    } else {
        let a_real = RealScalar::from_rational(alpha, prec_bits);
        let f = exactcore::efp_real(&dims, &a_real)?;
        f.ln()?.to_f64()
    };
    let phi_n = -ln_f / (n as f64 * n as f64);
    let p = ScaledPoint::new(x, y)?;
    let alpha_f = alpha
        .to_f64()
        .ok_or_else(|| Error::Numeric("alpha to f64".into()))?;
    let gap = phi_n - asympt::rate_phi(&p, alpha_f)?;
    Ok(ConvergenceRow {
        n,
        r: dims.r,
        s: dims.s,
        q: dims.q,
        phi_n,
        gap,
    })
}

/// Default working precision: 512 bits beyond `N = 64`, 128 below.
pub fn default_prec_bits(n: u32) -> usize {
    if n > 64 {
        512
    } else {
        128
    }
}

/// Which `Phi -> phi` translation the finite-size data selects.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MappingAdjudication {
    pub direct_dev: f64,
    pub scaled_dev: f64,
    /// True when the direct (factor 1) mapping wins.
    pub direct_wins: bool,
}

/// A convergence scan with its extrapolated limit.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ConvergenceRow>,
    pub extrapolated: f64,
    pub phi_limit: f64,
    pub mapping: Option<MappingAdjudication>,
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for k in 0..3 {
        let piv = (k..3).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))?;
        m.swap(k, piv);
        b.swap(k, piv);
        if m[k][k] == 0.0 {
            return None;
        }
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for j in k..3 {
                m[i][j] -= f * m[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = [0.0; 3];
    for k in (0..3).rev() {
        let mut acc = b[k];
        for j in k + 1..3 {
            acc -= m[k][j] * x[j];
        }
        x[k] = acc / m[k][k];
    }
    Some(x)
}

/// Least-squares fit of `phi_N = phi + c1/N + c2 log(N)/N^2` (exact solve
/// for three sizes). The basis captures the leading finite-size
/// corrections of such determinants; the model choice is an artifact
/// convention, not a claim from the source analysis.
fn extrapolate(rows: &[ConvergenceRow]) -> Result<f64> {
    if rows.len() < 3 {
        return Err(Error::InvalidParams(
            "convergence scan needs >= 3 sizes".into(),
        ));
    }
    let basis = |n: f64| [1.0, 1.0 / n, n.ln() / (n * n)];
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for row in rows {
        let phi = basis(row.n as f64);
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += phi[i] * phi[j];
            }
            atb[i] += phi[i] * row.phi_n;
        }
    }
    let sol =
        solve3(ata, atb).ok_or_else(|| Error::Numeric("singular extrapolation fit".into()))?;
    Ok(sol[0])
}

/// Runs [`finite_size_phi`] over the given sizes, extrapolates to
/// `N -> inf`, and (at `D_II` points) adjudicates the gas-mapping
/// prefactor against the extrapolated value.
pub fn convergence_scan(
    x: f64,
    y: f64,
    alpha: &BigRational,
    ns: &[u32],
    prec_bits: Option<usize>,
    rule: RoundingRule,
) -> Result<ScanResult> {
    let rows: Vec<ConvergenceRow> = ns
        .par_iter()
        .map(|&n| {
            finite_size_phi(
                x,
                y,
                alpha,
                n,
                prec_bits.unwrap_or(default_prec_bits(n)),
                rule,
            )
        })
        .collect::<Result<_>>()?;
    let extrapolated = extrapolate(&rows)?;
    let p = ScaledPoint::new(x, y)?;
    let alpha_f = alpha
        .to_f64()
        .ok_or_else(|| Error::Numeric("alpha to f64".into()))?;
    let phi_limit = asympt::rate_phi(&p, alpha_f)?;
    let mapping = if classify_interior_dii(&p, alpha_f) {
        let direct = asympt::rate_from_gas(&p, alpha_f, GasMapping::Direct)?;
        let scaled = asympt::rate_from_gas(&p, alpha_f, GasMapping::Scaled)?;
        let direct_dev = (extrapolated - direct).abs();
        let scaled_dev = (extrapolated - scaled).abs();
        Some(MappingAdjudication {
            direct_dev,
            scaled_dev,
            direct_wins: direct_dev < scaled_dev,
        })
    } else {
        None
    };
    Ok(ScanResult {
        rows,
        extrapolated,
        phi_limit,
        mapping,
    })
}

fn classify_interior_dii(p: &ScaledPoint, alpha: f64) -> bool {
    p.y > 0.0 && asympt::classify_point(p, alpha, asympt::ARC_TOL) == RegionTag::DomainII
}

/// Power-law fit of the rate above the critical bias.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransitionFit {
    pub alpha_c: f64,
    /// Slope of `log phi` against `log(alpha - alpha_c)`.
    pub exponent: f64,
    /// Third-derivative estimate `3! c3` from the corrected cubic fit
    /// `phi/d^3 = c3 + c4 d + c5 d^2`; directly comparable to
    /// [`asympt::cubic_coeff`].
    pub amplitude: f64,
    pub r_squared: f64,
    /// Closed-form coefficient at the same point, when defined.
    pub formula_coeff: Option<f64>,
}

fn power_fit(ds: &[f64], phis: &[f64]) -> (f64, f64, f64) {
    let n = ds.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&d, &p) in ds.iter().zip(phis) {
        let (lx, ly) = (d.ln(), p.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean = sy / n;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for (&d, &p) in ds.iter().zip(phis) {
        let fit = slope * d.ln() + intercept;
        ss_res += (p.ln() - fit).powi(2);
        ss_tot += (p.ln() - mean).powi(2);
    }
    (slope, intercept, 1.0 - ss_res / ss_tot)
}

fn cubic_amplitude(ds: &[f64], phis: &[f64]) -> Result<f64> {
    // phi / d^3 = c3 + c4 d + c5 d^2, least squares
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for (&d, &p) in ds.iter().zip(phis) {
        let basis = [1.0, d, d * d];
        let y = p / (d * d * d);
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += basis[i] * basis[j];
            }
            atb[i] += basis[i] * y;
        }
    }
    let sol = solve3(ata, atb).ok_or_else(|| Error::Numeric("singular amplitude fit".into()))?;
    Ok(6.0 * sol[0])
}

/// Fits `phi ~ C (alpha - alpha_c)^3` over a window strictly above the
/// critical bias, with log-spaced samples. The exponent and `r^2` come
/// from the plain log-log regression; the amplitude is the
/// third-derivative estimate from the corrected cubic fit (the window is
/// wide enough that the quartic term would otherwise bias it by ~20%).
pub fn transition_fit(x: f64, y: f64, lo: f64, hi: f64, n: usize) -> Result<TransitionFit> {
    let p = ScaledPoint::new(x, y)?;
    let ac = asympt::alpha_c(&p);
    if lo <= ac {
        return Err(Error::WindowBelowCritical(format!(
            "alpha-lo = {lo} <= alpha_c = {ac}"
        )));
    }
    if n < 4 || hi <= lo {
        return Err(Error::InvalidParams("need hi > lo and n >= 4".into()));
    }
    let ratio = ((hi - ac) / (lo - ac)).powf(1.0 / (n as f64 - 1.0));
    let mut ds = Vec::with_capacity(n);
    let mut phis = Vec::with_capacity(n);
    for k in 0..n {
        let d = (lo - ac) * ratio.powi(k as i32);
        ds.push(d);
        phis.push(asympt::rate_phi(&p, ac + d)?);
    }
    let (exponent, _, r_squared) = power_fit(&ds, &phis);
    Ok(TransitionFit {
        alpha_c: ac,
        exponent,
        amplitude: cubic_amplitude(&ds, &phis)?,
        r_squared,
        formula_coeff: asympt::cubic_coeff(&p).ok(),
    })
}

/// Geometric variant: fixed bias, rate sampled at normal distance `t`
/// into `D_II` from the arc point with angle `phi_angle`, fitting
/// `phi ~ t^3`.
pub fn transition_fit_geometric(
    phi_angle: f64,
    lambda: f64,
    t_lo: f64,
    t_hi: f64,
    n: usize,
) -> Result<TransitionFit> {
    let (p0, alpha) = asympt::arc_param(phi_angle, lambda)?;
    if n < 4 || !(t_lo > 0.0 && t_hi > t_lo) {
        return Err(Error::InvalidParams(
            "need 0 < t_lo < t_hi and n >= 4".into(),
        ));
    }
    // inward normal: alpha_c decreases into D_II
    let (gx, gy) = alpha_c_gradient(&p0);
    let norm = (gx * gx + gy * gy).sqrt();
    let (nx, ny) = (-gx / norm, -gy / norm);
    let ratio = (t_hi / t_lo).powf(1.0 / (n as f64 - 1.0));
    let mut ts = Vec::with_capacity(n);
    let mut phis = Vec::with_capacity(n);
    for k in 0..n {
        let t = t_lo * ratio.powi(k as i32);
        let p = ScaledPoint::new(p0.x + t * nx, p0.y + t * ny)?;
        ts.push(t);
        phis.push(asympt::rate_phi(&p, alpha)?);
    }
    let (exponent, _, r_squared) = power_fit(&ts, &phis);
    Ok(TransitionFit {
        alpha_c: alpha,
        exponent,
        amplitude: cubic_amplitude(&ts, &phis)?,
        r_squared,
        formula_coeff: None,
    })
}

fn alpha_c_gradient(p: &ScaledPoint) -> (f64, f64) {
    let u = ((1.0 - p.x) * (1.0 - p.y)).sqrt();
    let v = (p.x * p.y).sqrt();
    let gx = 2.0 * (u - v) * (-(1.0 - p.y) / (2.0 * u) - p.y / (2.0 * v));
    let gy = 2.0 * (u - v) * (-(1.0 - p.x) / (2.0 * u) - p.x / (2.0 * v));
    (gx, gy)
}

/// Third-derivative estimate of the rate in alpha at the critical bias by
/// a forward finite difference; the independent oracle for the transition
/// amplitude.
pub fn cubic_coeff_fd_oracle(x: f64, y: f64, step: f64) -> Result<f64> {
    let p = ScaledPoint::new(x, y)?;
    let ac = asympt::alpha_c(&p);
    let f: Vec<f64> = (0..4)
        .map(|k| asympt::rate_phi(&p, ac + k as f64 * step))
        .collect::<Result<_>>()?;
    Ok((f[3] - 3.0 * f[2] + 3.0 * f[1] - f[0]) / (step * step * step))
}

/// Finite-difference check of the moment identity
/// `(1/s^2) d log I / d log alpha -> E`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub reldev: f64,
}

/// Central difference of `log I` in `log alpha` between two exact biases
/// against the closed-form first moment at their geometric mean.
pub fn moment_derivative_check(
    r_scale: f64,
    q_scale: f64,
    alpha_plus: &BigRational,
    alpha_minus: &BigRational,
    s: u32,
) -> Result<MomentCheck> {
    if s == 0 || s > 64 {
        return Err(Error::InvalidParams(format!("need 1 <= s <= 64, got {s}")));
    }
    let r = (r_scale * s as f64).round() as u32;
    let q = (q_scale * s as f64).round() as u32;
    let dims = LshapeDims::new(r, s, q)?;
    let (lp, lm) = rayon::join(
        || exactcore::coulomb_log_sum(&dims, alpha_plus),
        || exactcore::coulomb_log_sum(&dims, alpha_minus),
    );
    let dlog_alpha = ln_rational(alpha_plus)? - ln_rational(alpha_minus)?;
    let lhs = (lp? - lm?) / dlog_alpha / (s as f64 * s as f64);
    let alpha_mid = (ln_rational(alpha_plus)? + ln_rational(alpha_minus)?) / 2.0;
    let gas = GasParams::new(r_scale, q_scale, alpha_mid.exp())?;
    let sol = eqmeasure::endpoints(&gas)?;
    let rhs = eqmeasure::first_moment(&sol, &gas);
    Ok(MomentCheck {
        lhs,
        rhs,
        reldev: (lhs - rhs).abs() / rhs.abs(),
    })
}

/// Residual report of the resolvent identities for one parameter triple.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub regime: Regime,
    /// `(eps, |2 Re W - V'|)` at band mid for each requested epsilon.
    pub wwv: Vec<(f64, f64)>,
    pub normalization_residual: f64,
    pub moment_residual: f64,
    pub tail_moment_residual: f64,
    pub pass: bool,
}

pub fn resolvent_consistency(
    gas: &GasParams,
    eps_list: &[f64],
    z_tail: f64,
) -> Result<ConsistencyReport> {
    let sol = eqmeasure::endpoints(gas)?;
    let mu = 0.5 * (sol.a + sol.b);
    let wwv: Vec<(f64, f64)> = eps_list
        .iter()
        .map(|&eps| eqmeasure::wwv_residual(mu, eps, &sol, gas).map(|r| (eps, r)))
        .collect::<Result<_>>()?;
    let normalization_residual = (eqmeasure::normalization(&sol, gas) - 1.0).abs();
    let e_closed = eqmeasure::first_moment(&sol, gas);
    let moment_residual = (eqmeasure::first_moment_quadrature(&sol, gas) - e_closed).abs();
    let tail_moment_residual =
        (eqmeasure::first_moment_from_tail(&sol, gas, z_tail)? - e_closed).abs();
    let decreasing = wwv.windows(2).all(|w| w[1].1 <= w[0].1 || w[1].0 >= w[0].0);
    let pass = normalization_residual <= 1e-8
        && moment_residual <= 1e-8
        && tail_moment_residual <= 1e-6
        && wwv.last().map(|&(_, r)| r <= 1e-3).unwrap_or(false)
        && decreasing;
    Ok(ConsistencyReport {
        regime: sol.regime,
        wwv,
        normalization_residual,
        moment_residual,
        tail_moment_residual,
        pass,
    })
}

/// One named verification check: a residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, inputs: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            inputs: inputs.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exactcore,
    Asympt,
    Eqmeasure,
    Harness,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exactcore" => Ok(Suite::Exactcore),
            "asympt" => Ok(Suite::Asympt),
            "eqmeasure" => Ok(Suite::Eqmeasure),
            "harness" => Ok(Suite::Harness),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

const ACCEPT_ALPHAS: [(u64, u64); 4] = [(1, 4), (1, 3), (1, 2), (2, 3)];

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn exactcore_checks(tol_scale: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // oracle equivalence over the full small-size grid, as exact rationals
    let grid: Vec<(u32, u32, u32)> = (1..=6u32)
        .flat_map(|r| (0..=3u32).flat_map(move |s| (0..=3u32).map(move |q| (r, s, q))))
        .collect();
    let mismatches: u32 = grid
        .par_iter()
        .map(|&(r, s, q)| {
            let dims = LshapeDims::new(r, s, q).unwrap();
            let mut bad = 0;
            for (n, d) in ACCEPT_ALPHAS {
                let alpha = rat(n, d);
                let f_det = exactcore::efp_hankel(&dims, &alpha).unwrap();
                let (_, f_sum) = exactcore::coulomb_sum_oracle(&dims, &alpha).unwrap();
                if f_det != f_sum {
                    bad += 1;
                }
                if f_det < BigRational::from_integer(0.into())
                    || f_det > BigRational::from_integer(1.into())
                {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    checks.push(Check::new(
        "exactcore/oracle-equivalence",
        format!(
            "r<=6, s<=3, q<=3, {} alphas ({} cases)",
            ACCEPT_ALPHAS.len(),
            grid.len() * 4
        ),
        mismatches as f64,
        0.5,
    ));
    // alpha = 0 normalization: F = 1 exactly
    let zero = BigRational::from_integer(0.into());
    let bad_zero = grid
        .iter()
        .filter(|&&(r, s, q)| {
            let dims = LshapeDims::new(r, s, q).unwrap();
            !exactcore::efp_hankel(&dims, &zero).unwrap().is_one()
        })
        .count();
    checks.push(Check::new(
        "exactcore/alpha0-normalization",
        "same grid, alpha = 0",
        bad_zero as f64,
        0.5,
    ));
    // alpha -> 1 coefficient against the closed Hahn product
    let near_one = rat(99_999, 100_000);
    let mut worst: f64 = 0.0;
    for &(r, s, q) in &grid {
        if s == 0 || s > r {
            // the Hahn product (and the alpha -> 1 coefficient) exist for
            // s <= r; beyond that the probability vanishes identically
            continue;
        }
        let dims = LshapeDims::new(r, s, q).unwrap();
        let f = exactcore::efp_hankel(&dims, &near_one)?;
        let coef = exactcore::efp_alpha1_coefficient(&dims)?;
        let scale = crate::scalar::pow_rational(
            &(BigRational::from_integer(1.into()) - &near_one),
            (s * (s + q)) as i64,
        );
        let ratio = (f / (scale * coef)).to_f64().unwrap();
        worst = worst.max((ratio - 1.0).abs());
    }
    checks.push(Check::new(
        "exactcore/alpha1-hahn-coefficient",
        "alpha = 1 - 1e-5, grid with s >= 1",
        worst,
        1e-3 * tol_scale,
    ));
    Ok(checks)
}

fn sample_triangle_point(rng: &mut ChaCha8Rng) -> ScaledPoint {
    loop {
        let x: f64 = rng.random_range(0.02..0.98);
        let y: f64 = rng.random_range(0.01..0.49);
        if y <= x && y <= 1.0 - x - 0.02 {
            return ScaledPoint::new(x, y).unwrap();
        }
    }
}

fn asympt_checks(tol_scale: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    // eta solver: closed form vs bisection, residuals, arc limit
    let (mut eta_dev, mut eta_res): (f64, f64) = (0.0, 0.0);
    let mut positives = 0usize;
    let mut chi_dev: f64 = 0.0;
    for _ in 0..1000 {
        let p = sample_triangle_point(&mut rng);
        let ac = asympt::alpha_c(&p);
        if ac >= 0.995 {
            continue;
        }
        let alpha = rng.random_range((ac + 1e-4).min(0.998)..0.999);
        let closed = asympt::eta_root(&p, alpha, EtaMethod::ClosedForm)?;
        let bisect = asympt::eta_root(&p, alpha, EtaMethod::Bisection)?;
        eta_dev = eta_dev.max((closed.eta - bisect.eta).abs());
        eta_res = eta_res.max(closed.residual.max(bisect.residual));
        if asympt::rate_phi(&p, alpha)? > 0.0 {
            positives += 1;
        }
        let h = asympt::h_param(&p)?;
        chi_dev = chi_dev.max((asympt::chi_eta(&p, h)? - asympt::chi_zero(&p)).abs());
    }
    checks.push(Check::new(
        "asympt/eta-closed-vs-bisection",
        "1000 random D_II points",
        eta_dev,
        1e-10 * tol_scale,
    ));
    checks.push(Check::new(
        "asympt/eta-equation-residual",
        "same sample",
        eta_res,
        1e-10 * tol_scale,
    ));
    checks.push(Check::new(
        "asympt/rate-positive-in-dii",
        "same sample",
        (1000 - positives) as f64,
        0.5,
    ));
    checks.push(Check::new(
        "asympt/chi-identity-at-h",
        "same sample",
        chi_dev,
        1e-12 * tol_scale,
    ));
    // on the arc eta = h
    let mut arc_dev: f64 = 0.0;
    let mut rate_arc: f64 = 0.0;
    for k in 0..100 {
        let lambda = 0.2 + 1.1 * (k % 10) as f64 / 10.0;
        let phi_angle =
            lambda + (std::f64::consts::FRAC_PI_2 - lambda) * ((k / 10) as f64 + 0.5) / 10.0;
        if lambda >= std::f64::consts::FRAC_PI_2 {
            continue;
        }
        let (p, alpha) = asympt::arc_param(phi_angle, lambda)?;
        if p.y < 1e-6 {
            continue;
        }
        let root = asympt::eta_root(&p, alpha, EtaMethod::Bisection)?;
        arc_dev = arc_dev.max((root.eta - asympt::h_param(&p)?).abs());
        // continuity just above the arc: cubic vanishing keeps phi tiny
        rate_arc = rate_arc.max(asympt::rate_phi(&p, alpha + 1e-4)?.abs());
    }
    checks.push(Check::new(
        "asympt/eta-equals-h-on-arc",
        "100 arc points",
        arc_dev,
        1e-10 * tol_scale,
    ));
    checks.push(Check::new(
        "asympt/rate-vanishes-near-arc",
        "same arc points, alpha = alpha_c + 1e-4",
        rate_arc,
        1e-9 * tol_scale,
    ));
    // D_I: identically zero
    let mut di_worst: f64 = 0.0;
    for _ in 0..200 {
        let p = sample_triangle_point(&mut rng);
        let ac = asympt::alpha_c(&p);
        if ac < 0.05 {
            continue;
        }
        let alpha = rng.random_range(0.0001..(ac - 1e-3).max(0.0002));
        di_worst = di_worst.max(asympt::rate_phi(&p, alpha)?.abs());
    }
    checks.push(Check::new(
        "asympt/rate-zero-in-di",
        "200 D_I points",
        di_worst,
        1e-15,
    ));
    Ok(checks)
}

fn eqmeasure_checks(tol_scale: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // Regime I closed form satisfies its end-point system
    let mut r1_worst: f64 = 0.0;
    for (r, q, alpha) in [
        (10.0, 0.0, 0.5),
        (15.0, 3.0, 0.5),
        (8.0, 0.3, 0.25),
        (30.0, 6.0, 0.7),
    ] {
        let gas = GasParams::new(r, q, alpha)?;
        let sol = eqmeasure::endpoints(&gas)?;
        let (e1, e2) = eqmeasure::endpoint_residuals(&sol, &gas);
        r1_worst = r1_worst.max(e1.abs()).max(e2.abs());
    }
    checks.push(Check::new(
        "eqmeasure/regime1-endpoint-residuals",
        "4 Regime I triples",
        r1_worst,
        1e-12 * tol_scale,
    ));
    // Regime II: 200 random triples, both equations + closed-form eta
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut r2_worst: f64 = 0.0;
    let mut eta_dev: f64 = 0.0;
    let mut found = 0;
    while found < 200 {
        let alpha: f64 = rng.random_range(0.05..0.95);
        let q: f64 = rng.random_range(0.0..6.0);
        let rc = (1.0 + (alpha * (1.0 + q)).sqrt()).powi(2) / (1.0 - alpha);
        let r: f64 = rng.random_range(1.02..rc.min(50.0));
        if r >= rc * 0.999 {
            continue;
        }
        let gas = GasParams::new(r, q, alpha)?;
        let Ok(sol) = eqmeasure::endpoints(&gas) else {
            continue; // within tolerance of a critical line
        };
        let (e1, e2) = eqmeasure::endpoint_residuals(&sol, &gas);
        r2_worst = r2_worst.max(e1.abs()).max(e2.abs());
        let closed = asympt::eta_root_rq(r, q, alpha, EtaMethod::ClosedForm)?;
        let bisect = asympt::eta_root_rq(r, q, alpha, EtaMethod::Bisection)?;
        eta_dev = eta_dev.max((closed.eta - bisect.eta).abs());
        found += 1;
    }
    checks.push(Check::new(
        "eqmeasure/regime2-endpoint-residuals",
        "200 random Regime II triples",
        r2_worst,
        1e-10 * tol_scale,
    ));
    checks.push(Check::new(
        "eqmeasure/regime2-eta-crosscheck",
        "same triples, explicit root vs bisection",
        eta_dev,
        1e-10 * tol_scale,
    ));
    // densities, normalization, moments, variational condition per regime
    let samples = [
        (10.0, 0.0, 0.5),
        (15.0, 3.0, 0.5),
        (4.0, 0.0, 0.5),
        (4.0, 3.0, 0.5),
    ];
    let mut bounds_bad = 0usize;
    let (mut norm_worst, mut mom_worst, mut tail_worst, mut wwv_worst): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0);
    let mut wwv_nondecreasing = 0usize;
    for (r, q, alpha) in samples {
        let gas = GasParams::new(r, q, alpha)?;
        let report = resolvent_consistency(&gas, &[1e-4, 1e-6], 1e6)?;
        norm_worst = norm_worst.max(report.normalization_residual);
        mom_worst = mom_worst.max(report.moment_residual);
        tail_worst = tail_worst.max(report.tail_moment_residual);
        wwv_worst = wwv_worst.max(report.wwv.last().unwrap().1);
        if report.wwv[1].1 >= report.wwv[0].1 {
            wwv_nondecreasing += 1;
        }
        let sol = eqmeasure::endpoints(&gas)?;
        for k in 0..=1000 {
            let mu = gas.r * k as f64 / 1000.0;
            let rho = eqmeasure::density_profile(mu, &sol, &gas)?;
            if !(-1e-12..=1.0 + 1e-12).contains(&rho) {
                bounds_bad += 1;
            }
        }
    }
    checks.push(Check::new(
        "eqmeasure/density-bounds",
        "1000 points per profile, all four regimes",
        bounds_bad as f64,
        0.5,
    ));
    checks.push(Check::new(
        "eqmeasure/normalization",
        "all four regimes",
        norm_worst,
        1e-8 * tol_scale,
    ));
    checks.push(Check::new(
        "eqmeasure/first-moment-quadrature",
        "closed form vs band quadrature",
        mom_worst,
        1e-8 * tol_scale,
    ));
    checks.push(Check::new(
        "eqmeasure/first-moment-large-z",
        "tail extraction at |z| = 1e6",
        tail_worst,
        1e-6 * tol_scale,
    ));
    checks.push(Check::new(
        "eqmeasure/wwv-residual",
        "band mid, eps = 1e-6 (and decreasing from 1e-4)",
        wwv_worst + wwv_nondecreasing as f64,
        1e-3 * tol_scale,
    ));
    Ok(checks)
}

fn harness_checks(tol_scale: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // third-order transition at (1/4, 1/4)
    let fit = transition_fit(0.25, 0.25, 0.25 + 1e-3, 0.25 + 5e-2, 30)?;
    checks.push(Check::new(
        "harness/transition-exponent",
        "(1/4, 1/4), alpha in [ac+1e-3, ac+5e-2]",
        (fit.exponent - 3.0).abs(),
        0.05 * tol_scale,
    ));
    let formula = fit.formula_coeff.unwrap();
    let fd = cubic_coeff_fd_oracle(0.25, 0.25, 2e-4)?;
    checks.push(Check::new(
        "harness/transition-amplitude-vs-formula",
        format!("fit amplitude {} vs formula {formula}", fit.amplitude),
        (fit.amplitude - formula).abs() / formula,
        0.02 * tol_scale,
    ));
    checks.push(Check::new(
        "harness/cubic-coeff-fd-oracle",
        format!("finite difference {fd} vs formula {formula}"),
        (fd - formula).abs() / formula,
        0.02 * tol_scale,
    ));
    checks.push(Check::new(
        "harness/transition-fit-quality",
        "r^2 of the log-log fit",
        1.0 - fit.r_squared,
        1e-3 * tol_scale,
    ));
    let below = asympt::rate_phi(&ScaledPoint::new(0.25, 0.25)?, 0.25 - 1e-3)?;
    checks.push(Check::new(
        "harness/rate-zero-below-critical",
        "(1/4, 1/4), alpha = alpha_c - 1e-3",
        below.abs(),
        1e-12,
    ));
    // finite-size convergence at (1/4, 1/4), alpha = 1/2, N in {32, 64, 128}
    let scan = convergence_scan(
        0.25,
        0.25,
        &rat(1, 2),
        &[32, 64, 128],
        None,
        RoundingRule::Nearest,
    )?;
    let decreasing = scan
        .rows
        .windows(2)
        .all(|w| w[1].gap.abs() < w[0].gap.abs());
    checks.push(Check::new(
        "harness/convergence-gaps-decrease",
        format!(
            "gaps {:?}",
            scan.rows.iter().map(|r| r.gap).collect::<Vec<_>>()
        ),
        if decreasing { 0.0 } else { 1.0 },
        0.5,
    ));
    checks.push(Check::new(
        "harness/convergence-extrapolation",
        format!(
            "extrapolated {} vs limit {}",
            scan.extrapolated, scan.phi_limit
        ),
        (scan.extrapolated - scan.phi_limit).abs() / scan.phi_limit,
        1e-2 * tol_scale,
    ));
    // gas-mapping adjudication at five D_II points
    let adjudication_points = [
        (0.25, 0.25, 2, 4),
        (0.3, 0.2, 1, 2),
        (0.35, 0.3, 3, 5),
        (0.2, 0.15, 7, 10),
        (0.4, 0.35, 1, 2),
    ];
    let mut scaled_wins = 0usize;
    for &(x, y, n, d) in &adjudication_points {
        // sizes commensurate with the coordinates, so rounding adds no bias
        let scan = convergence_scan(x, y, &rat(n, d), &[40, 60, 80], None, RoundingRule::Nearest)?;
        let m = scan
            .mapping
            .ok_or_else(|| Error::Numeric("expected D_II point".into()))?;
        if !m.direct_wins {
            scaled_wins += 1;
        }
    }
    checks.push(Check::new(
        "harness/gas-mapping-adjudication",
        "5 D_II points, direct (factor 1) mapping must win at each",
        scaled_wins as f64,
        0.5,
    ));
    // moment derivative at s = 40: Regime I within 2%, Regime II within 5%
    let (ap, am) = (rat(9, 16), rat(4, 9));
    let reg1 = moment_derivative_check(10.0, 0.0, &ap, &am, 40)?;
    checks.push(Check::new(
        "harness/moment-derivative-regime1",
        format!("R=10, Q=0, s=40: lhs {} vs E {}", reg1.lhs, reg1.rhs),
        reg1.reldev,
        0.02 * tol_scale,
    ));
    let reg1_small = moment_derivative_check(10.0, 0.0, &ap, &am, 20)?;
    checks.push(Check::new(
        "harness/moment-derivative-converges",
        "reldev at s=40 below reldev at s=20",
        if reg1.reldev < reg1_small.reldev {
            0.0
        } else {
            1.0
        },
        0.5,
    ));
    let reg2 = moment_derivative_check(4.0, 0.0, &ap, &am, 40)?;
    checks.push(Check::new(
        "harness/moment-derivative-regime2",
        format!("R=4, Q=0, s=40: lhs {} vs E {}", reg2.lhs, reg2.rhs),
        reg2.reldev,
        0.05 * tol_scale,
    ));
    Ok(checks)
}

/// Runs a verification suite; every acceptance criterion maps onto one or
/// more named checks with pinned tolerances (`tol_scale` multiplies them).
pub fn verify(suite: Suite, tol_scale: f64) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Exactcore | Suite::All) {
        checks.extend(exactcore_checks(tol_scale)?);
    }
    if matches!(suite, Suite::Asympt | Suite::All) {
        checks.extend(asympt_checks(tol_scale)?);
    }
    if matches!(suite, Suite::Eqmeasure | Suite::All) {
        checks.extend(eqmeasure_checks(tol_scale)?);
    }
    if matches!(suite, Suite::Harness | Suite::All) {
        checks.extend(harness_checks(tol_scale)?);
    }
    let passed = checks.iter().all(|c| c.pass);
    let name = match suite {
        Suite::Exactcore => "exactcore",
        Suite::Asympt => "asympt",
        Suite::Eqmeasure => "eqmeasure",
        Suite::Harness => "harness",
        Suite::All => "all",
    };
    Ok(VerifyReport {
        suite: name.to_string(),
        checks,
        passed,
    })
}

/// Convenience used by multiple checks: rate at a `D_I` point must vanish
/// without evaluating the formulas (sanity anchor for scans).
pub fn rate_at(x: f64, y: f64, alpha: f64) -> Result<f64> {
    asympt::rate_phi(&ScaledPoint::new(x, y)?, alpha)
}

/// Schwarz reflection sanity of the resolvent at a few points, exposed for
/// the consistency example.
pub fn resolvent_schwarz_dev(gas: &GasParams, samples: u32) -> Result<f64> {
    let sol = eqmeasure::endpoints(gas)?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = Complex64::new(
            rng.random_range(-5.0..gas.r + 5.0),
            rng.random_range(0.05..5.0),
        );
        let w = eqmeasure::resolvent(z, &sol, gas)?;
        let wc = eqmeasure::resolvent(z.conj(), &sol, gas)?;
        worst = worst.max((w.conj() - wc).norm());
    }
    Ok(worst)
}
