//! Thermodynamic-limit quantities: the scaled triangle, region
//! classification against the arctic ellipse, the eta root of the quartic
//! saddle-point equation (closed trigonometric form and bisection), the
//! rate function `phi(x, y)` and free energy per site, the `alpha -> 1`
//! limits, the scaled Coulomb-gas free energy `Phi(R, Q)`, and the cubic
//! coefficient of the third-order transition.
//!
//! Conventions used throughout: `0 * log 0 = 0` (every such term is a
//! limit of `t^2 log t` forms), and points are classified by the sign of
//! `alpha - alpha_c(x, y)` with an `ON_ARC` band of width [`ARC_TOL`].

use crate::{Error, Result};

/// Classification tolerance: `|alpha - alpha_c| <= ARC_TOL` counts as on
/// the arc. Continuity of the rate function makes the choice immaterial at
/// this scale.
pub const ARC_TOL: f64 = 1e-12;

/// Bisection tolerance on eta.
pub const ETA_TOL: f64 = 1e-14;

/// Closed form and bisection must agree to this bound before `Both` mode
/// reports a root.
pub const ETA_AGREE_TOL: f64 = 1e-9;

fn xlogy(c: f64, t: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * t.ln()
    }
}

/// A point of the scaled triangle `0 <= y <= x`, `y <= 1 - x`. Here
/// `x = (s+q)/N` and `y = s/N` are the scaled cut sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPoint {
    pub x: f64,
    pub y: f64,
}

impl ScaledPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let slack = 1e-12;
        if !(x.is_finite() && y.is_finite()) || y < -slack || y > x + slack || y > 1.0 - x + slack {
            return Err(Error::OutsideTriangle { x, y });
        }
        Ok(Self {
            x: x.clamp(0.0, 1.0),
            y: y.clamp(0.0, 0.5),
        })
    }

    /// Scaled gas coordinates `R = (1-x)/y`, `Q = (x-y)/y`; requires `y > 0`.
    pub fn gas_coords(&self) -> Option<(f64, f64)> {
        (self.y > 0.0).then(|| ((1.0 - self.x) / self.y, (self.x - self.y) / self.y))
    }
}

/// Which side of the arctic arc a point falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    /// Frozen side: the cut corner misses the ellipse; the rate vanishes.
    DomainI,
    /// Overlap side: positive rate.
    DomainII,
    /// Within tolerance of the separating arc.
    OnArc,
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionTag::DomainI => write!(f, "D_I"),
            RegionTag::DomainII => write!(f, "D_II"),
            RegionTag::OnArc => write!(f, "ON_ARC"),
        }
    }
}

/// `h(x, y) = sqrt(xy / ((1-x)(1-y)))`, the arc value of eta.
pub fn h_param(p: &ScaledPoint) -> Result<f64> {
    if p.x >= 1.0 - f64::EPSILON || p.y >= 1.0 - f64::EPSILON {
        return Err(Error::BoundaryDegenerate);
    }
    Ok((p.x * p.y / ((1.0 - p.x) * (1.0 - p.y))).sqrt())
}

/// Critical bias `alpha_c(x, y) = (sqrt((1-x)(1-y)) - sqrt(xy))^2`; the
/// point lies on the arc exactly when `alpha = alpha_c`.
pub fn alpha_c(p: &ScaledPoint) -> f64 {
    let u = ((1.0 - p.x) * (1.0 - p.y)).sqrt();
    let v = (p.x * p.y).sqrt();
    (u - v) * (u - v)
}

/// Left side of the ellipse equation, `(1-x-y)^2/alpha + (x-y)^2/(1-alpha)`;
/// equals 1 on the full arctic ellipse. Exposed for the equivalence check
/// with [`classify_point`].
pub fn ellipse_form(p: &ScaledPoint, alpha: f64) -> f64 {
    let a = 1.0 - p.x - p.y;
    let b = p.x - p.y;
    a * a / alpha + b * b / (1.0 - alpha)
}

pub fn classify_point(p: &ScaledPoint, alpha: f64, tol: f64) -> RegionTag {
    let ac = alpha_c(p);
    if alpha < ac - tol {
        RegionTag::DomainI
    } else if alpha > ac + tol {
        RegionTag::DomainII
    } else {
        RegionTag::OnArc
    }
}

/// Signed residual of the arc equation `sqrt(y) = sqrt((1-x)(1-alpha)) - sqrt(x alpha)`.
pub fn arc_residual(p: &ScaledPoint, alpha: f64) -> f64 {
    p.y.sqrt() - (((1.0 - p.x) * (1.0 - alpha)).sqrt() - (p.x * alpha).sqrt())
}

/// The saddle-point ratio whose unit value defines eta:
/// `alpha (1+e)^2 (x+(1-x)e)(y+(1-y)e) / ((1-e)^2 (y+(1-x)e)(x+(1-y)e))`.
fn eta_eq_ratio(p: &ScaledPoint, alpha: f64, e: f64) -> f64 {
    let (x, y) = (p.x, p.y);
    alpha * (1.0 + e).powi(2) * (x + (1.0 - x) * e) * (y + (1.0 - y) * e)
        / ((1.0 - e).powi(2) * (y + (1.0 - x) * e) * (x + (1.0 - y) * e))
}

/// Absolute deviation of the ratio from 1.
pub fn eta_eq_residual(p: &ScaledPoint, alpha: f64, e: f64) -> f64 {
    (eta_eq_ratio(p, alpha, e) - 1.0).abs()
}

/// Polynomial form of the eta equation (quartic in `e`); shares its roots
/// with the ratio form but stays finite at `e = 1`.
fn eta_poly(p: &ScaledPoint, alpha: f64, e: f64) -> f64 {
    let (x, y) = (p.x, p.y);
    alpha * (1.0 + e).powi(2) * (x + (1.0 - x) * e) * (y + (1.0 - y) * e)
        - (1.0 - e).powi(2) * (y + (1.0 - x) * e) * (x + (1.0 - y) * e)
}

/// Root finding strategy for [`eta_root`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtaMethod {
    /// Trigonometric closed form of the quartic (the fast path).
    #[default]
    ClosedForm,
    /// Sign bisection of the polynomial form on `[0, 1]`.
    Bisection,
    /// Both, cross-checked against [`ETA_AGREE_TOL`].
    Both,
}

/// A solved eta root with its equation residual.
#[derive(Debug, Clone, Copy)]
pub struct EtaRoot {
    pub eta: f64,
    pub residual: f64,
    pub method: EtaMethod,
}

fn eta_bisect_core(p: &ScaledPoint, alpha: f64) -> Result<f64> {
    let f0 = eta_poly(p, alpha, 0.0);
    let f1 = eta_poly(p, alpha, 1.0);
    if !(f0 < 0.0 && f1 > 0.0) {
        return Err(Error::NoRootInUnitInterval(format!(
            "no sign change on [0, 1] at ({}, {}), alpha = {alpha}",
            p.x, p.y
        )));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ETA_TOL {
            break;
        }
        if eta_poly(p, alpha, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed-form root of the quartic, via the resolvent angle. Evaluates all
/// four sign choices of the trigonometric root formula and keeps the one
/// landing in `[0, 1]` with the smallest equation residual; the winning
/// pattern is expected to be `(+, -)` (see `closed_sign_pattern`).
fn eta_closed_core(a_coef: f64, b_coef: f64, alpha: f64) -> Result<Vec<(f64, (i8, i8))>> {
    let s3 = (1.0 - a_coef * a_coef - b_coef * b_coef) / 3.0;
    if s3 <= 0.0 {
        return Err(Error::NoRootInUnitInterval("closed form: S <= 0".into()));
    }
    let arg = (1.0 - 2.0 * a_coef * a_coef * b_coef * b_coef / (s3 * s3 * s3)).clamp(-1.0, 1.0);
    let theta = arg.acos();
    let term = |k: f64| -> f64 {
        let t = b_coef * b_coef + 2.0 * s3 * (1.0 - ((theta + k) / 3.0).cos());
        t.max(0.0).sqrt()
    };
    let (t0, t1, t2) = (
        term(0.0),
        term(2.0 * std::f64::consts::PI),
        term(-2.0 * std::f64::consts::PI),
    );
    let sqrt_alpha = alpha.sqrt();
    let mut candidates = Vec::new();
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            let raw = 0.5 * b_coef + 0.5 * (t0 + s1 as f64 * t1 + s2 as f64 * t2);
            if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&raw) {
                continue;
            }
            let x_root = raw.clamp(-1.0, 1.0);
            let cos_w = (1.0 - x_root * x_root).max(0.0).sqrt();
            let eta = (cos_w - sqrt_alpha) / (cos_w + sqrt_alpha);
            if (-1e-12..=1.0).contains(&eta) {
                candidates.push((eta.max(0.0), (s1, s2)));
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoRootInUnitInterval(
            "closed form: no candidate in [0, 1]".into(),
        ));
    }
    Ok(candidates)
}

fn eta_closed_point(p: &ScaledPoint, alpha: f64) -> Result<(f64, (i8, i8))> {
    let a_coef = alpha.sqrt() * (1.0 - p.x - p.y);
    let b_coef = (1.0 - alpha).sqrt() * (p.x - p.y);
    let candidates = eta_closed_core(a_coef, b_coef, alpha)?;
    candidates
        .into_iter()
        .min_by(|(e1, _), (e2, _)| {
            eta_eq_residual(p, alpha, *e1)
                .partial_cmp(&eta_eq_residual(p, alpha, *e2))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .ok_or_else(|| Error::NoRootInUnitInterval("closed form: empty candidate set".into()))
}

/// Winning sign pattern of the closed form at a point, for the defensive
/// branch check (expected `(+1, -1)`).
pub fn closed_sign_pattern(p: &ScaledPoint, alpha: f64) -> Result<(i8, i8)> {
    eta_closed_point(p, alpha).map(|(_, s)| s)
}

/// The unique root of the eta equation in `[0, 1]`. Requires a `D_II` or
/// on-arc point with `y > 0`.
pub fn eta_root(p: &ScaledPoint, alpha: f64, method: EtaMethod) -> Result<EtaRoot> {
    if p.y <= 0.0 {
        return Err(Error::NoRootInUnitInterval("y must be positive".into()));
    }
    if classify_point(p, alpha, ARC_TOL) == RegionTag::DomainI {
        return Err(Error::NoRootInUnitInterval(format!(
            "({}, {}) with alpha = {alpha} classifies as D_I",
            p.x, p.y
        )));
    }
    let eta = match method {
        EtaMethod::ClosedForm => eta_closed_point(p, alpha)?.0,
        EtaMethod::Bisection => eta_bisect_core(p, alpha)?,
        EtaMethod::Both => {
            let closed = eta_closed_point(p, alpha)?.0;
            let bisect = eta_bisect_core(p, alpha)?;
            if (closed - bisect).abs() > ETA_AGREE_TOL {
                return Err(Error::MethodDisagreement { closed, bisect });
            }
            closed
        }
    };
    Ok(EtaRoot {
        eta,
        residual: eta_eq_residual(p, alpha, eta),
        method,
    })
}

/// Inverts the eta equation: the bias (and its complement) a given eta
/// corresponds to at this point. The two values are computed from distinct
/// closed forms and sum to 1 up to roundoff.
pub fn alpha_of_eta(p: &ScaledPoint, e: f64) -> (f64, f64) {
    let (x, y) = (p.x, p.y);
    let alpha = (1.0 - e).powi(2) * (y + (1.0 - x) * e) * (x + (1.0 - y) * e)
        / ((1.0 + e).powi(2) * (x + (1.0 - x) * e) * (y + (1.0 - y) * e));
    let one_minus = e * (x + y + (2.0 - x - y) * e).powi(2)
        / ((1.0 + e).powi(2) * (x + (1.0 - x) * e) * (y + (1.0 - y) * e));
    (alpha, one_minus)
}

/// The eight-logarithm kernel `chi(x, y; e)`; the rate function is its
/// increment between `e = eta` and `e = h`.
pub fn chi_eta(p: &ScaledPoint, e: f64) -> Result<f64> {
    let (x, y) = (p.x, p.y);
    let args = [
        e,
        1.0 - e,
        1.0 + e,
        y + (1.0 - x) * e,
        x + (1.0 - y) * e,
        x + (1.0 - x) * e,
        y + (1.0 - y) * e,
        x + y + (2.0 - x - y) * e,
    ];
    for &t in &args {
        if t < 0.0 {
            return Err(Error::LogDomain(t));
        }
    }
    Ok(
        -xlogy(x * y, args[0]) + xlogy((1.0 - x - y).powi(2) / 2.0, args[1]) + xlogy(0.5, args[2])
            - xlogy((1.0 - x) * y, args[3])
            - xlogy(x * (1.0 - y), args[4])
            + xlogy(x * (1.0 - x), args[5])
            + xlogy(y * (1.0 - y), args[6])
            + xlogy((x - y).powi(2) / 2.0, args[7]),
    )
}

/// The eta-independent part: `chi_0(x, y) = chi(x, y; h)` in closed form.
pub fn chi_zero(p: &ScaledPoint) -> f64 {
    let (x, y) = (p.x, p.y);
    -xlogy(x * x / 2.0, x)
        - xlogy((1.0 - x).powi(2) / 2.0, 1.0 - x)
        - xlogy(y * y / 2.0, y)
        - xlogy((1.0 - y).powi(2) / 2.0, 1.0 - y)
        + xlogy((1.0 - x - y).powi(2) / 2.0, 1.0 - x - y)
}

fn eta_for_rate(p: &ScaledPoint, alpha: f64) -> Result<f64> {
    let (eta, _) = eta_closed_point(p, alpha)?;
    if eta_eq_residual(p, alpha, eta) <= 1e-9 {
        return Ok(eta);
    }
    eta_bisect_core(p, alpha)
}

/// The rate function `phi(x, y; alpha)`: zero on `D_I` and the arc,
/// `chi(x,y;eta) - chi(x,y;h)` on `D_II`. Non-negative everywhere.
pub fn rate_phi(p: &ScaledPoint, alpha: f64) -> Result<f64> {
    match classify_point(p, alpha, ARC_TOL) {
        RegionTag::DomainI | RegionTag::OnArc => Ok(0.0),
        RegionTag::DomainII => {
            if p.y == 0.0 {
                // s = 0 row: the probability is exactly 1
                return Ok(0.0);
            }
            let h = h_param(p)?;
            let eta = eta_for_rate(p, alpha)?;
            Ok(chi_eta(p, eta)? - chi_eta(p, h)?)
        }
    }
}

/// Free energy per site of the L-shaped domain:
/// `f = (f(0,0) + xy log w2 + phi) / (1 - xy)` with `f(0,0) = -log sqrt(rho)`.
pub fn free_energy(p: &ScaledPoint, alpha: f64, rho: f64) -> Result<f64> {
    if p.x * p.y >= 1.0 {
        return Err(Error::OutsideTriangle { x: p.x, y: p.y });
    }
    let w2 = (rho * (1.0 - alpha)).sqrt();
    if w2 <= 0.0 {
        return Err(Error::InvalidParams(
            "alpha = 1 or rho = 0 makes w2 = 0".into(),
        ));
    }
    let phi = rate_phi(p, alpha)?;
    Ok((-rho.sqrt().ln() + p.x * p.y * w2.ln() + phi) / (1.0 - p.x * p.y))
}

/// Stirling limit of the Hahn-product rate, `psi(x, y)`.
pub fn psi_corner(x: f64, y: f64) -> f64 {
    xlogy((x + y).powi(2) / 2.0, x + y)
        - xlogy((1.0 - x - y).powi(2) / 2.0, 1.0 - x - y)
        - xlogy(x * x / 2.0, x)
        + xlogy((1.0 - x).powi(2) / 2.0, 1.0 - x)
        - xlogy(y * y / 2.0, y)
        + xlogy((1.0 - y).powi(2) / 2.0, 1.0 - y)
}

/// Scaled gas free energy at `alpha = 1`, the integration boundary value
/// for Regime II.
pub fn gas_free_energy_alpha1(r: f64, q: f64) -> f64 {
    -xlogy(r * r / 2.0, r) + xlogy((r - 1.0).powi(2) / 2.0, r - 1.0)
        - xlogy((r + q).powi(2) / 2.0, r + q)
        + xlogy((1.0 + q).powi(2) / 2.0, 1.0 + q)
        - xlogy((2.0 + q).powi(2) / 2.0, 2.0 + q)
        + xlogy((r + q + 1.0).powi(2) / 2.0, r + q + 1.0)
}

/// `(psi(x, y), Phi(R, Q)|alpha=1)` at a point with `y > 0`; the pair
/// satisfies `Phi|1 = -(R+Q+1)^2 psi`.
pub fn alpha1_limit(p: &ScaledPoint) -> Result<(f64, f64)> {
    let psi = psi_corner(p.x, p.y);
    let (r, q) = p
        .gas_coords()
        .ok_or_else(|| Error::InvalidParams("alpha1_limit needs y > 0".into()))?;
    Ok((psi, gas_free_energy_alpha1(r, q)))
}

/// Eta root in gas coordinates `(R, Q)`; same equation as [`eta_root`]
/// under `x = (1+Q)/(R+Q+1)`, `y = 1/(R+Q+1)`.
pub fn eta_root_rq(r: f64, q: f64, alpha: f64, method: EtaMethod) -> Result<EtaRoot> {
    let n_plus = r + q + 1.0;
    let p = ScaledPoint::new((1.0 + q) / n_plus, 1.0 / n_plus)?;
    eta_root(&p, alpha, method).map_err(|e| match e {
        Error::NoRootInUnitInterval(_) => Error::NoEtaRoot { r, q, alpha },
        other => other,
    })
}

/// Seven-logarithm antiderivative of the first moment along the eta curve.
fn omega_seven_logs(r: f64, q: f64, e: f64) -> f64 {
    xlogy(0.5 + r - r * r / 2.0, 1.0 - e)
        + xlogy(0.5 - r + q - (r + q).powi(2) / 2.0, 1.0 + e)
        + xlogy(0.5 + r, 1.0 + r * e)
        + xlogy(0.5 - r + q - r * q, 1.0 + q + r * e)
        + xlogy(0.5 - r, 1.0 + (r + q) * e)
        + xlogy(0.5 + r + q + r * q + q * q, 1.0 + q + (r + q) * e)
        - xlogy((2.0 + q).powi(2) / 2.0, 2.0 + q + (2.0 * r + q) * e)
}

/// Integration constant fixed by the `alpha = 1` boundary value.
fn gas_integration_const(r: f64, q: f64) -> f64 {
    -xlogy(r * r / 2.0, r) + xlogy((r - 1.0).powi(2) / 2.0, r - 1.0)
        - xlogy((r + q).powi(2) / 2.0, r + q)
        - xlogy((1.0 + q).powi(2) / 2.0, 1.0 + q)
        + xlogy((r + q + 1.0).powi(2) / 2.0, r + q + 1.0)
}

/// Scaled Coulomb-gas free energy `Phi(R, Q; alpha)`:
/// `-(Q+1) log(1-alpha) + log sqrt(alpha)` in Regime I, and the
/// seven-logarithm antiderivative plus its integration constant in
/// Regime II.
pub fn gas_free_energy(r: f64, q: f64, alpha: f64) -> Result<f64> {
    let valid = r.is_finite() && r >= 1.0 && q >= 0.0 && alpha > 0.0 && alpha < 1.0;
    if !valid {
        return Err(Error::InvalidParams(format!(
            "need R >= 1, Q >= 0, alpha in (0,1); got R = {r}, Q = {q}, alpha = {alpha}"
        )));
    }
    let r_c = (1.0 + (alpha * (1.0 + q)).sqrt()).powi(2) / (1.0 - alpha);
    if r > r_c {
        return Ok(-(q + 1.0) * (1.0 - alpha).ln() + alpha.sqrt().ln());
    }
    let eta = eta_root_rq(r, q, alpha, EtaMethod::ClosedForm)?.eta;
    Ok(omega_seven_logs(r, q, eta) + gas_integration_const(r, q))
}

/// How to translate the gas free energy into the triangle rate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GasMapping {
    /// `phi = -xy log(1-alpha) + y^2 log sqrt(alpha) - y^2 Phi(R, Q)`,
    /// the relation that follows from the scalings directly. Adjudicated
    /// as the correct one by the finite-size harness.
    #[default]
    Direct,
    /// The same right side divided by `(1-x)^2`, kept for comparison.
    Scaled,
}

/// Candidate translations of `Phi(R, Q)` into `phi(x, y)`; the harness
/// adjudicates between them against finite-size data.
pub fn rate_from_gas(p: &ScaledPoint, alpha: f64, mapping: GasMapping) -> Result<f64> {
    let (r, q) = p
        .gas_coords()
        .ok_or_else(|| Error::InvalidParams("rate_from_gas needs y > 0".into()))?;
    let phi_gas = gas_free_energy(r, q, alpha)?;
    let base =
        -p.x * p.y * (1.0 - alpha).ln() + p.y * p.y * alpha.sqrt().ln() - p.y * p.y * phi_gas;
    Ok(match mapping {
        GasMapping::Direct => base,
        GasMapping::Scaled => base / (1.0 - p.x).powi(2),
    })
}

/// Third derivative of the rate in alpha at the critical bias:
/// `C = sqrt(x(1-x)y(1-y)) / (2 alpha_c^2 (1-alpha_c)^2) > 0`.
pub fn cubic_coeff(p: &ScaledPoint) -> Result<f64> {
    if 1.0 - p.x - p.y < 1e-12 {
        return Err(Error::ArcDegenerate);
    }
    if p.x <= 0.0 || p.y <= 0.0 {
        return Err(Error::InvalidParams(
            "cubic_coeff needs an interior point".into(),
        ));
    }
    let ac = alpha_c(p);
    Ok((p.x * (1.0 - p.x) * p.y * (1.0 - p.y)).sqrt() / (2.0 * ac * ac * (1.0 - ac) * (1.0 - ac)))
}

/// `d(log alpha)/d(eta)` at `eta = h`: `-4 (1-x)(1-y) / (1-x-y)`.
pub fn deta_log_alpha_at_h(p: &ScaledPoint) -> f64 {
    -4.0 * (1.0 - p.x) * (1.0 - p.y) / (1.0 - p.x - p.y)
}

/// Angle parametrization of the arc: for `lambda in (0, pi/2)` and
/// `phi_angle in [lambda, pi/2]`, returns the arc point
/// `x = cos^2((phi+lambda)/2)`, `y = sin^2((phi-lambda)/2)` together with
/// its bias `alpha = sin^2(lambda)`.
pub fn arc_param(phi_angle: f64, lambda: f64) -> Result<(ScaledPoint, f64)> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(lambda > 0.0 && lambda < half_pi) {
        return Err(Error::AngleOutOfRange(format!(
            "lambda = {lambda} not in (0, pi/2)"
        )));
    }
    if !(phi_angle >= lambda - 1e-15 && phi_angle <= half_pi + 1e-15) {
        return Err(Error::AngleOutOfRange(format!(
            "phi = {phi_angle} not in [lambda, pi/2] with lambda = {lambda}"
        )));
    }
    let x = ((phi_angle + lambda) / 2.0).cos().powi(2);
    let y = ((phi_angle - lambda) / 2.0).sin().powi(2);
    let alpha = lambda.sin().powi(2);
    Ok((ScaledPoint::new(x, y)?, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(x: f64, y: f64) -> ScaledPoint {
        ScaledPoint::new(x, y).unwrap()
    }

    /// Golden rate at (1/4, 1/4), alpha = 1/2. Frozen from the finite-size
    /// extrapolation oracle (N in {32, 64, 128} exact rationals; see the
    /// acceptance suite); regenerate with
    /// `lshape converge --x 0.25 --y 0.25 --alpha 1/2 --Ns 32,64,128`.
    #[allow(clippy::excessive_precision)] // frozen oracle digits
    const PHI_QUARTER_HALF: f64 = 0.003_995_823_726_053_861_4;

    #[test]
    fn h_param_examples() {
        assert_abs_diff_eq!(
            h_param(&pt(0.25, 0.25)).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_eq!(h_param(&pt(0.7, 0.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(h_param(&pt(0.5, 0.5)).unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(
            h_param(&pt(1.0, 0.0)),
            Err(Error::BoundaryDegenerate)
        ));
    }

    #[test]
    fn alpha_c_examples() {
        assert_abs_diff_eq!(alpha_c(&pt(0.25, 0.25)), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_c(&pt(0.3, 0.0)), 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_c(&pt(0.0, 0.0)), 1.0, epsilon = 1e-15);
        // symmetric line value (1 - 2x)^2
        assert_abs_diff_eq!(alpha_c(&pt(0.1, 0.1)), 0.64, epsilon = 1e-15);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_point(&pt(0.1, 0.1), 0.5, ARC_TOL),
            RegionTag::DomainI
        );
        assert_eq!(
            classify_point(&pt(0.25, 0.25), 0.5, ARC_TOL),
            RegionTag::DomainII
        );
        let (p, alpha) = arc_param(0.9, 0.5).unwrap();
        assert_eq!(classify_point(&p, alpha, 1e-9), RegionTag::OnArc);
    }

    #[test]
    fn classification_matches_ellipse_test() {
        // D_I <=> y below the arc height y_c(x) (the ellipse test restricted
        // to the triangle: the arc exists only for x <= 1 - alpha, and the
        // whole column is D_II beyond the contact point)
        let mut k = 0u32;
        for i in 1..40 {
            for j in 1..i {
                let (x, y) = (i as f64 / 40.0, j as f64 / 40.0);
                if y > 1.0 - x - 0.01 {
                    continue;
                }
                let p = pt(x, y);
                for alpha in [0.2, 0.5, 0.8] {
                    let root = ((1.0 - alpha) * (1.0 - x)).sqrt() - (alpha * x).sqrt();
                    let y_c = if root > 0.0 { root * root } else { 0.0 };
                    if (y - y_c).abs() < 1e-6 {
                        continue;
                    }
                    let tag = classify_point(&p, alpha, ARC_TOL);
                    let expect = if y < y_c {
                        RegionTag::DomainI
                    } else {
                        RegionTag::DomainII
                    };
                    assert_eq!(tag, expect, "at ({x}, {y}), alpha = {alpha}");
                    k += 1;
                }
            }
        }
        assert!(k > 500);
        // on the arc itself the full ellipse form evaluates to 1
        for j in 1..=10 {
            let (p, alpha) = arc_param(0.4 + j as f64 * 0.1, 0.4).unwrap();
            assert!((ellipse_form(&p, alpha) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn eta_on_arc_equals_h() {
        let p = pt(0.25, 0.25);
        let root = eta_root(&p, 0.25, EtaMethod::Both).unwrap();
        assert_abs_diff_eq!(root.eta, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eta_golden_value() {
        // x = y kills the cross terms: eta = (1 - sqrt(alpha)) / (1 + sqrt(alpha))
        let root = eta_root(&pt(0.25, 0.25), 0.5, EtaMethod::Both).unwrap();
        let expect = 3.0 - 2.0 * 2.0f64.sqrt();
        assert_abs_diff_eq!(root.eta, expect, epsilon = 1e-13);
        assert!(root.residual <= 1e-12);
    }

    #[test]
    fn eta_vanishes_as_alpha_to_one() {
        let p = pt(0.3, 0.2);
        let mut last = 1.0;
        for alpha in [0.9, 0.99, 0.999, 0.999999] {
            let eta = eta_root(&p, alpha, EtaMethod::ClosedForm).unwrap().eta;
            assert!(eta < last);
            last = eta;
        }
        assert!(last < 1e-5);
    }

    #[test]
    fn eta_methods_agree_on_random_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut n = 0;
        while n < 300 {
            let x: f64 = rng.random_range(0.02..0.98);
            let y: f64 = rng.random_range(0.01..0.49);
            if y > x || y > 1.0 - x - 0.02 {
                continue;
            }
            let p = pt(x, y);
            let ac = alpha_c(&p);
            let alpha = rng.random_range((ac + 1e-4).min(0.999)..0.9999);
            let closed = eta_root(&p, alpha, EtaMethod::ClosedForm).unwrap();
            let bisect = eta_root(&p, alpha, EtaMethod::Bisection).unwrap();
            assert!(
                (closed.eta - bisect.eta).abs() <= 1e-10,
                "disagreement at ({x}, {y}), alpha = {alpha}: {} vs {}",
                closed.eta,
                bisect.eta
            );
            assert!(closed.residual <= 1e-10);
            assert_eq!(closed_sign_pattern(&p, alpha).unwrap(), (1, -1));
            n += 1;
        }
    }

    #[test]
    fn eta_rejects_domain_i() {
        assert!(matches!(
            eta_root(&pt(0.1, 0.1), 0.5, EtaMethod::ClosedForm),
            Err(Error::NoRootInUnitInterval(_))
        ));
    }

    #[test]
    fn alpha_of_eta_round_trip() {
        let p = pt(0.3, 0.2);
        let (a0, om0) = alpha_of_eta(&p, 0.0);
        assert_abs_diff_eq!(a0, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(om0, 0.0, epsilon = 1e-15);
        let h = h_param(&p).unwrap();
        let (ah, _) = alpha_of_eta(&p, h);
        assert_abs_diff_eq!(ah, alpha_c(&p), epsilon = 1e-14);
        for alpha in [0.45, 0.6, 0.9] {
            let eta = eta_root(&p, alpha, EtaMethod::ClosedForm).unwrap().eta;
            let (back, one_minus) = alpha_of_eta(&p, eta);
            assert_abs_diff_eq!(back, alpha, epsilon = 1e-12);
            assert_abs_diff_eq!(back + one_minus, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn chi_zero_examples() {
        assert_abs_diff_eq!(
            chi_zero(&pt(0.5, 0.5)),
            0.5 * std::f64::consts::LN_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn chi_at_h_equals_chi_zero() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut n = 0;
        while n < 200 {
            let x: f64 = rng.random_range(0.02..0.98);
            let y: f64 = rng.random_range(0.01..0.49);
            if y > x || y > 1.0 - x - 0.02 {
                continue;
            }
            let p = pt(x, y);
            let h = h_param(&p).unwrap();
            assert!((chi_eta(&p, h).unwrap() - chi_zero(&p)).abs() <= 1e-12);
            n += 1;
        }
    }

    #[test]
    fn chi_is_stationary_to_second_order_at_h() {
        let p = pt(0.25, 0.25);
        let h = h_param(&p).unwrap();
        let step = 1e-4;
        let c = |e: f64| chi_eta(&p, e).unwrap();
        let d1 = (c(h + step) - c(h - step)) / (2.0 * step);
        let d2 = (c(h + step) - 2.0 * c(h) + c(h - step)) / (step * step);
        assert!(d1.abs() < 1e-7, "first derivative {d1}");
        assert!(d2.abs() < 1e-6, "second derivative {d2}");
    }

    #[test]
    fn rate_examples() {
        assert_eq!(rate_phi(&pt(0.1, 0.1), 0.5).unwrap(), 0.0);
        let (p, ac) = arc_param(1.0, 0.6).unwrap();
        assert!(rate_phi(&p, ac).unwrap().abs() <= 1e-10);
        let phi = rate_phi(&pt(0.25, 0.25), 0.5).unwrap();
        assert_abs_diff_eq!(phi, PHI_QUARTER_HALF, epsilon = 1e-12);
        assert!(phi > 0.0);
    }

    #[test]
    fn free_energy_examples() {
        // y = 0: f = -log sqrt(rho)
        let f = free_energy(&pt(0.6, 0.0), 0.5, 2.0).unwrap();
        assert_abs_diff_eq!(f, -(2.0f64.sqrt().ln()), epsilon = 1e-14);
        // D_I, rho = 1: f = xy log w2 / (1 - xy)
        let p = pt(0.1, 0.1);
        let f = free_energy(&p, 0.5, 1.0).unwrap();
        let expect = 0.01 * 0.5f64.sqrt().ln() / 0.99;
        assert_abs_diff_eq!(f, expect, epsilon = 1e-14);
        // D_II composition
        let p = pt(0.25, 0.25);
        let f = free_energy(&p, 0.5, 2.0).unwrap();
        let w2 = (2.0 * 0.5f64).sqrt();
        let expect = (-(2.0f64.sqrt().ln()) + 0.0625 * w2.ln() + PHI_QUARTER_HALF) / (1.0 - 0.0625);
        assert_abs_diff_eq!(f, expect, epsilon = 1e-14);
    }

    #[test]
    fn alpha1_limits() {
        assert_eq!(psi_corner(0.5, 0.5), 0.0);
        assert_eq!(gas_free_energy_alpha1(1.0, 0.0), 0.0);
        // Phi|1 = -(R+Q+1)^2 psi under the coordinate map
        for (r, q) in [(3.0, 0.0), (2.0, 1.5), (5.0, 0.7)] {
            let n_plus = r + q + 1.0;
            let p = pt((1.0 + q) / n_plus, 1.0 / n_plus);
            let (psi, phi1) = alpha1_limit(&p).unwrap();
            assert_abs_diff_eq!(phi1, -n_plus * n_plus * psi, epsilon = 1e-10);
        }
    }

    #[test]
    fn rate_approaches_psi_as_alpha_to_one() {
        // lim [phi + xy log(1-alpha)] = psi(x, y)
        let p = pt(0.3, 0.2);
        let alpha = 1.0 - 1e-6;
        let phi = rate_phi(&p, alpha).unwrap();
        let lhs = phi + p.x * p.y * (1.0 - alpha).ln();
        assert!((lhs - psi_corner(p.x, p.y)).abs() <= 1e-4);
    }

    #[test]
    fn gas_free_energy_regimes() {
        // Regime I, alpha = 1/2, Q = 0: (1/2) log 2
        let phi = gas_free_energy(10.0, 0.0, 0.5).unwrap();
        assert_abs_diff_eq!(phi, 0.5 * std::f64::consts::LN_2, epsilon = 1e-14);
        // Regime II joins the alpha = 1 value as eta -> 0
        let (r, q) = (4.0, 0.7);
        let phi_near_1 = gas_free_energy(r, q, 1.0 - 1e-9).unwrap();
        assert!((phi_near_1 - gas_free_energy_alpha1(r, q)).abs() < 1e-6);
    }

    #[test]
    fn gas_mapping_direct_reproduces_rate() {
        for (x, y, alpha) in [(0.25, 0.25, 0.5), (0.3, 0.2, 0.5), (0.35, 0.3, 0.6)] {
            let p = pt(x, y);
            let direct = rate_from_gas(&p, alpha, GasMapping::Direct).unwrap();
            let phi = rate_phi(&p, alpha).unwrap();
            assert!(
                (direct - phi).abs() <= 1e-12,
                "at ({x}, {y}, {alpha}): {direct} vs {phi}"
            );
        }
    }

    #[test]
    fn cubic_coefficient_examples() {
        assert_abs_diff_eq!(
            cubic_coeff(&pt(0.25, 0.25)).unwrap(),
            8.0 / 3.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(deta_log_alpha_at_h(&pt(0.25, 0.25)), -4.5, epsilon = 1e-15);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut n = 0;
        while n < 1000 {
            let x: f64 = rng.random_range(0.01..0.99);
            let y: f64 = rng.random_range(0.005..0.495);
            if y > x || y > 1.0 - x - 0.01 {
                continue;
            }
            assert!(cubic_coeff(&pt(x, y)).unwrap() > 0.0);
            n += 1;
        }
    }

    #[test]
    fn cubic_coefficient_matches_third_finite_difference() {
        // third forward difference of phi at alpha_c estimates d^3 phi
        let p = pt(0.25, 0.25);
        let ac = alpha_c(&p);
        let d = 2e-4;
        let f: Vec<f64> = (0..4)
            .map(|k| rate_phi(&p, ac + k as f64 * d).unwrap())
            .collect();
        let d3 = (f[3] - 3.0 * f[2] + 3.0 * f[1] - f[0]) / (d * d * d);
        let c = cubic_coeff(&p).unwrap();
        assert!((d3 - c).abs() / c < 0.02, "fd {d3} vs formula {c}");
    }

    #[test]
    fn arc_param_examples() {
        let lambda = 0.7;
        // phi = pi/2: symmetric point x = y
        let (p, _) = arc_param(std::f64::consts::FRAC_PI_2, lambda).unwrap();
        assert_abs_diff_eq!(p.x, p.y, epsilon = 1e-15);
        // phi = lambda: contact point (1 - alpha, 0)
        let (p, alpha) = arc_param(lambda, lambda).unwrap();
        assert_abs_diff_eq!(p.x, 1.0 - alpha, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 0.0, epsilon = 1e-15);
        assert!(arc_param(0.5, 0.7).is_err());
        // residual over a grid of angles
        for i in 1..10 {
            let lambda = i as f64 * 0.15;
            if lambda >= std::f64::consts::FRAC_PI_2 {
                break;
            }
            for j in 0..=10 {
                let phi = lambda + (std::f64::consts::FRAC_PI_2 - lambda) * j as f64 / 10.0;
                let (p, alpha) = arc_param(phi, lambda).unwrap();
                assert!(arc_residual(&p, alpha).abs() <= 1e-12);
                // eta on the arc equals h
                let expect_eta =
                    ((phi + lambda) / 2.0).tan().recip() * ((phi - lambda) / 2.0).tan();
                if p.y > 1e-12 {
                    assert_abs_diff_eq!(h_param(&p).unwrap(), expect_eta, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn rate_symmetric_in_x_y_as_formula() {
        // the formulas are (x, y) symmetric even though the domain is y <= x
        let p1 = pt(0.35, 0.2);
        let h1 = h_param(&p1).unwrap();
        let swapped = ScaledPoint { x: 0.2, y: 0.35 };
        let h2 = (swapped.x * swapped.y / ((1.0 - swapped.x) * (1.0 - swapped.y))).sqrt();
        assert_abs_diff_eq!(h1, h2, epsilon = 1e-15);
        assert_abs_diff_eq!(
            alpha_c(&p1),
            alpha_c(&ScaledPoint { x: 0.2, y: 0.35 }),
            epsilon = 1e-15
        );
        let phi1 = rate_phi(&p1, 0.6).unwrap();
        let eta = eta_root(&p1, 0.6, EtaMethod::ClosedForm).unwrap().eta;
        let phi2 = chi_eta(&swapped, eta).unwrap() - chi_eta(&swapped, h1).unwrap();
        assert_abs_diff_eq!(phi1, phi2, epsilon = 1e-12);
    }

    #[test]
    fn ten_term_kernel_matches_eight_term_form() {
        // the alpha-explicit ten-term kernel, with alpha = alpha(eta), must
        // agree with the eta-only eight-term form
        let p = pt(0.3, 0.2);
        for e in [0.15, 0.37, 0.6, 0.85] {
            let (alpha, one_minus) = alpha_of_eta(&p, e);
            let (x, y) = (p.x, p.y);
            let ten = -x * y * one_minus.ln()
                + y * y / 2.0 * alpha.ln()
                + (x * x / 2.0 + x * y - y * y / 2.0 - x - y + 0.5) * (1.0 - e).ln()
                + (y * y - 2.0 * x * y + 0.5) * (1.0 + e).ln()
                - (y / 2.0 - x + 1.0) * y * (y + (1.0 - x) * e).ln()
                - (x * x + x * y - y * y / 2.0 - x) * (x + (1.0 - x) * e).ln()
                - (y / 2.0 + x - 1.0) * y * (y + (1.0 - y) * e).ln()
                - (y * y / 2.0 - x * y + x) * (x + (1.0 - y) * e).ln()
                + (x + y).powi(2) / 2.0 * (x + y + (2.0 - x - y) * e).ln();
            assert_abs_diff_eq!(ten, chi_eta(&p, e).unwrap(), epsilon = 1e-13);
        }
    }

    #[test]
    fn eta_root_uniqueness_by_sign_count() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let mut n = 0;
        while n < 1000 {
            let x: f64 = rng.random_range(0.02..0.98);
            let y: f64 = rng.random_range(0.01..0.49);
            if y > x || y > 1.0 - x - 0.02 {
                continue;
            }
            let p = pt(x, y);
            let ac = alpha_c(&p);
            if ac >= 0.998 {
                continue;
            }
            let alpha = rng.random_range((ac + 1e-3).min(0.998)..0.999);
            let mut changes = 0;
            let mut prev = eta_poly(&p, alpha, 0.0);
            for k in 1..=2000 {
                let e = k as f64 / 2000.0;
                let cur = eta_poly(&p, alpha, e);
                if prev.signum() != cur.signum() && cur != 0.0 {
                    changes += 1;
                }
                prev = cur;
            }
            assert_eq!(changes, 1, "at ({x}, {y}), alpha = {alpha}");
            n += 1;
        }
    }
}
