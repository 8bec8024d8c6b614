//! Equilibrium measure of the discrete Coulomb gas with two hard walls:
//! regime classification, band end-points (closed form in Regime I,
//! parametric in Regime II), resolvents, densities, and first moments.
//!
//! The gas lives on `[0, R]` with potential
//! `V(mu) = -mu log(alpha) + mu log(mu) - (Q+mu) log(Q+mu) + Q log(Q)` and
//! the discreteness bound `rho <= 1`. One band `[a, b]` sits between two
//! gaps whose character names the regime: (saturated, void) = IA,
//! (void, void) = IB, (saturated, saturated) = IIA, (void, saturated) =
//! IIB. Regime I is `R > Rc`, Regime II is `R < Rc`; inside each, the
//! left-gap character flips at a critical `Q`.

use num::complex::Complex64;

use crate::asympt::{self, EtaMethod};
use crate::gauss;
use crate::{Error, Result};

/// Scaled gas parameters: right hard wall `R >= 1`, weight offset
/// `Q >= 0`, bias `alpha in (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    pub r: f64,
    pub q: f64,
    pub alpha: f64,
}

impl GasParams {
    pub fn new(r: f64, q: f64, alpha: f64) -> Result<Self> {
        let valid =
            r.is_finite() && r >= 1.0 && q.is_finite() && q >= 0.0 && alpha > 0.0 && alpha < 1.0;
        if !valid {
            return Err(Error::InvalidParams(format!(
                "need R >= 1, Q >= 0, alpha in (0, 1); got R = {r}, Q = {q}, alpha = {alpha}"
            )));
        }
        Ok(Self { r, q, alpha })
    }

    /// Potential minimum `mu0 = Q alpha / (1 - alpha)`.
    pub fn mu0(&self) -> f64 {
        self.q * self.alpha / (1.0 - self.alpha)
    }

    /// Left-wall critical offset in Regime I: `Qc = (1 - alpha) / alpha`.
    pub fn q_critical(&self) -> f64 {
        (1.0 - self.alpha) / self.alpha
    }

    /// Right-wall critical width `Rc = (1 + sqrt(alpha(1+Q)))^2 / (1-alpha)`.
    pub fn r_critical(&self) -> f64 {
        (1.0 + (self.alpha * (1.0 + self.q)).sqrt()).powi(2) / (1.0 - self.alpha)
    }
}

fn xlogy(c: f64, t: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * t.ln()
    }
}

/// Confining potential and its derivative at `mu in [0, R]`
/// (`0 log 0 = 0`; for `Q > 0` the derivative diverges to `-inf` at the
/// left wall, while at `Q = 0` it is the constant `-log alpha`).
pub fn potential(mu: f64, gas: &GasParams) -> Result<(f64, f64)> {
    if !(0.0..=gas.r).contains(&mu) {
        return Err(Error::Wall(mu, gas.r));
    }
    let v =
        -mu * gas.alpha.ln() + xlogy(mu, mu) - xlogy(gas.q + mu, gas.q + mu) + xlogy(gas.q, gas.q);
    let vp = if gas.q == 0.0 {
        -gas.alpha.ln()
    } else if mu == 0.0 {
        f64::NEG_INFINITY
    } else {
        -gas.alpha.ln() + mu.ln() - (mu + gas.q).ln()
    };
    Ok((v, vp))
}

/// The four one-band gap structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    IA,
    IB,
    IIA,
    IIB,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::IA => write!(f, "IA"),
            Regime::IB => write!(f, "IB"),
            Regime::IIA => write!(f, "IIA"),
            Regime::IIB => write!(f, "IIB"),
        }
    }
}

/// The six auxiliary combinations of the Regime II parametric solution,
/// all positive for `eta in (0, 1)`:
/// `A± = (sqrt(b) ± nu sqrt(a))^2/4`, `B± = (sqrt(b+Q) ± sqrt(a+Q))^2/4`,
/// `C± = (sqrt(R-a) ± sqrt(R-b))^2/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcQuantities {
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub n_plus: f64,
    pub n_minus: f64,
}

impl AbcQuantities {
    pub fn z_plus(&self) -> f64 {
        self.n_plus - 2.0 * self.c_plus
    }

    pub fn z_minus(&self) -> f64 {
        self.n_minus - 2.0 * self.c_minus
    }
}

/// A solved band: end-points, regime, and (Regime II) the curve parameter
/// with its auxiliary quantities. `nu` is the branch sign separating the
/// A-variants from the B-variants.
#[derive(Debug, Clone, Copy)]
pub struct RegimeSolution {
    pub regime: Regime,
    pub a: f64,
    pub b: f64,
    pub eta: Option<f64>,
    pub nu: i8,
    pub abc: Option<AbcQuantities>,
}

/// Factorized Regime II quantities as functions of the curve parameter.
fn abc_from_eta(r: f64, q: f64, eta: f64) -> AbcQuantities {
    let n_plus = r + q + 1.0;
    let n_minus = r - 1.0;
    let d = (2.0 + q + (2.0 * r + q) * eta).powi(2);
    let (om, op) = (1.0 - eta, 1.0 + eta);
    let f1 = 1.0 + r * eta;
    let f2 = 1.0 + q + r * eta;
    let f3 = 1.0 + (r + q) * eta;
    let f4 = 1.0 + q + (r + q) * eta;
    AbcQuantities {
        c_plus: n_plus * om * f1 * f4 / d,
        c_minus: n_minus * op * f2 * f3 / d,
        b_plus: n_plus * op * f2 * f4 / d,
        b_minus: n_minus * om * f1 * f3 / d,
        a_plus: n_plus * op * f1 * f3 / d,
        a_minus: n_minus * om * f2 * f4 / d,
        n_plus,
        n_minus,
    }
}

/// Residuals of the Regime II end-point system for a candidate branch:
/// the bias equation in its sign-safe product form
/// `alpha C- A+ / (C+ B-) = 1` and the linear closure
/// `A+ + B+ + 2C+ = N+` (with `A±` rebuilt from `(a, b, nu)`).
fn regime2_residuals(gas: &GasParams, a: f64, b: f64, nu: i8) -> (f64, f64) {
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let a_plus = (sb + nu as f64 * sa).powi(2) / 4.0;
    let b_minus = ((b + gas.q).sqrt() - (a + gas.q).sqrt()).powi(2) / 4.0;
    let c_plus = ((gas.r - a).sqrt() + (gas.r - b).sqrt()).powi(2) / 4.0;
    let c_minus = ((gas.r - a).sqrt() - (gas.r - b).sqrt()).powi(2) / 4.0;
    let b_plus = ((b + gas.q).sqrt() + (a + gas.q).sqrt()).powi(2) / 4.0;
    let res1 = gas.alpha * c_minus * a_plus / (c_plus * b_minus) - 1.0;
    let res2 = (a_plus + b_plus + 2.0 * c_plus) / (gas.r + gas.q + 1.0) - 1.0;
    (res1, res2)
}

/// Residuals of the Regime I end-point equations with the branch sign on
/// `sqrt(a)` (`+1` for IA, `-1` for IB).
fn regime1_residuals(gas: &GasParams, a: f64, b: f64, nu: i8) -> (f64, f64) {
    let res1 = ((b + gas.q).sqrt() - (a + gas.q).sqrt()) / (b.sqrt() + nu as f64 * a.sqrt())
        - gas.alpha.sqrt();
    let res2 =
        (((b + gas.q) * (a + gas.q)).sqrt() + nu as f64 * (a * b).sqrt() - gas.q) / 2.0 - 1.0;
    (res1, res2)
}

/// Exposes the end-point equation residuals of a solved band (first and
/// second equation of the regime's system).
pub fn endpoint_residuals(sol: &RegimeSolution, gas: &GasParams) -> (f64, f64) {
    match sol.regime {
        Regime::IA | Regime::IB => regime1_residuals(gas, sol.a, sol.b, sol.nu),
        Regime::IIA | Regime::IIB => regime2_residuals(gas, sol.a, sol.b, sol.nu),
    }
}

/// Classifies the gap structure. Signals [`Error::OnCriticalLine`] within
/// `tol` (relative) of the `R = Rc`, `Q = Qc` (Regime I) or `a = 0`
/// (Regime II) transition lines.
pub fn classify_regime(gas: &GasParams, tol: f64) -> Result<Regime> {
    let rc = gas.r_critical();
    if (gas.r - rc).abs() <= tol * rc {
        return Err(Error::OnCriticalLine(format!(
            "R = {} within tol of Rc = {rc}",
            gas.r
        )));
    }
    if gas.r > rc {
        let qc = gas.q_critical();
        if (gas.q - qc).abs() <= tol * qc.max(1.0) {
            return Err(Error::OnCriticalLine(format!(
                "Q = {} within tol of Qc = {qc}",
                gas.q
            )));
        }
        return Ok(if gas.q < qc { Regime::IA } else { Regime::IB });
    }
    let eta = asympt::eta_root_rq(gas.r, gas.q, gas.alpha, EtaMethod::ClosedForm)?.eta;
    let abc = abc_from_eta(gas.r, gas.q, eta);
    let gap = abc.a_plus - abc.a_minus;
    if gap.abs() <= tol * (abc.a_plus + abc.a_minus) {
        return Err(Error::OnCriticalLine(format!(
            "left edge a = 0 within tol at Q = {}",
            gas.q
        )));
    }
    Ok(if gap > 0.0 { Regime::IIA } else { Regime::IIB })
}

const REGIME_TOL: f64 = 1e-9;

/// Solves the band end-points. Regime I uses the closed form
/// `a, b = (1 -+ sqrt(alpha(1+Q)))^2 / (1-alpha)`; Regime II solves the
/// quartic for `eta` (closed form cross-checked against bisection) and
/// assembles the factorized quantities. Every returned solution has
/// end-point residuals below `1e-10`.
pub fn endpoints(gas: &GasParams) -> Result<RegimeSolution> {
    let regime = classify_regime(gas, REGIME_TOL)?;
    match regime {
        Regime::IA | Regime::IB => {
            let g = (gas.alpha * (1.0 + gas.q)).sqrt();
            let scale = (1.0 - gas.alpha).sqrt();
            let a = ((1.0 - g) / scale).powi(2);
            let b = ((1.0 + g) / scale).powi(2);
            let nu = if regime == Regime::IA { 1 } else { -1 };
            let (r1, r2) = regime1_residuals(gas, a, b, nu);
            if r1.abs() > 1e-10 || r2.abs() > 1e-10 {
                return Err(Error::Numeric(format!(
                    "regime I end-point residuals too large: {r1}, {r2}"
                )));
            }
            Ok(RegimeSolution {
                regime,
                a,
                b,
                eta: None,
                nu,
                abc: None,
            })
        }
        Regime::IIA | Regime::IIB => {
            let root = asympt::eta_root_rq(gas.r, gas.q, gas.alpha, EtaMethod::Both)?;
            let abc = abc_from_eta(gas.r, gas.q, root.eta);
            let (sp, sm) = (abc.a_plus.sqrt(), abc.a_minus.sqrt());
            let a = (sp - sm).powi(2);
            let b = (sp + sm).powi(2);
            // accept whichever branch sign satisfies the bias equation
            let mut chosen = None;
            for nu in [1i8, -1] {
                let (r1, r2) = regime2_residuals(gas, a, b, nu);
                if r1.abs() <= 1e-8 && r2.abs() <= 1e-8 {
                    chosen = Some(nu);
                    break;
                }
            }
            let nu = chosen.ok_or(Error::BranchMismatch)?;
            let expected = if abc.a_plus >= abc.a_minus { 1 } else { -1 };
            if nu != expected {
                return Err(Error::BranchMismatch);
            }
            Ok(RegimeSolution {
                regime,
                a,
                b,
                eta: Some(root.eta),
                nu,
                abc: Some(abc),
            })
        }
    }
}

/// Left-edge critical offset `Qc(R)` in Regime II, by bisection of
/// `a(R, Q, alpha) = 0` in `Q`. Requires `R < Rc(0)` so that the full
/// bracket stays in Regime II.
pub fn q_critical_regime2(r: f64, alpha: f64) -> Result<f64> {
    let rc0 = (1.0 + alpha.sqrt()).powi(2) / (1.0 - alpha);
    if r >= rc0 {
        return Err(Error::InvalidParams(format!(
            "q_critical_regime2 needs R < Rc(Q=0) = {rc0}, got R = {r}"
        )));
    }
    let gap = |q: f64| -> Result<f64> {
        let eta = asympt::eta_root_rq(r, q, alpha, EtaMethod::ClosedForm)?.eta;
        let abc = abc_from_eta(r, q, eta);
        Ok(abc.a_plus - abc.a_minus)
    };
    let mut lo = 0.0f64;
    if gap(lo)? <= 0.0 {
        return Err(Error::Numeric("left gap not saturated at Q = 0".into()));
    }
    let mut hi = 1.0f64;
    while gap(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(Error::Numeric(
                "no IIB transition found below Q = 1e8".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Stieltjes transform of the equilibrium measure at `z` off `[0, R]`,
/// from the regime's closed form. Principal branches throughout; real on
/// `(R, inf)` and Schwarz-symmetric.
pub fn resolvent(z: Complex64, sol: &RegimeSolution, gas: &GasParams) -> Result<Complex64> {
    if z.im == 0.0 && (-1e-300..=gas.r).contains(&z.re) {
        return Err(Error::OnCut(z.re, gas.r));
    }
    let (a, b, r, q) = (sol.a, sol.b, gas.r, gas.q);
    let za = (z - a).sqrt();
    let zb = (z - b).sqrt();
    let n1 = a.sqrt() * zb + b.sqrt() * za;
    let n2 = (a + q).sqrt() * zb + (b + q).sqrt() * za;
    let neg_ln_sqrt_alpha = -gas.alpha.sqrt().ln();
    Ok(match sol.regime {
        Regime::IA => {
            let d0 = ((b - a) * z).sqrt();
            neg_ln_sqrt_alpha - (n1 / d0).ln() - (n2 / d0).ln()
        }
        Regime::IB => neg_ln_sqrt_alpha + (n1 / n2).ln(),
        Regime::IIA => {
            let d3 = (r - a).sqrt() * zb + (r - b).sqrt() * za;
            neg_ln_sqrt_alpha + (z / (z - r)).ln() - (n1 / d3).ln() - (n2 / d3).ln()
        }
        Regime::IIB => {
            let d3 = (r - a).sqrt() * zb + (r - b).sqrt() * za;
            let sat = ((b - a) * (z - r)).sqrt() / d3;
            neg_ln_sqrt_alpha - 2.0 * sat.ln() + (n1 / n2).ln()
        }
    })
}

/// `sqrt(1 - u) - 1` without cancellation for small `u`.
fn sqrt1m_minus1(u: f64) -> f64 {
    -u / (1.0 + (1.0 - u).sqrt())
}

/// Relative deviation of `c1 sqrt(z-b) + c2 sqrt(z-a)` from its large-`z`
/// envelope `(c1 + c2) sqrt(z)`, computed stably.
fn tail_delta(c1: f64, c2: f64, a: f64, b: f64, z: f64) -> f64 {
    (c1 * sqrt1m_minus1(b / z) + c2 * sqrt1m_minus1(a / z)) / (c1 + c2)
}

/// Resolvent on the real axis to the right of the wall, evaluated in a
/// cancellation-free form: the O(1) block vanishes identically by the
/// end-point equations and is dropped, leaving a sum of `ln(1 + O(1/z))`
/// terms. Needed to extract the `1/z^2` coefficient at `z ~ 1e6` where the
/// naive form loses everything to rounding.
pub fn resolvent_tail(z: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if z <= gas.r.max(sol.b) {
        return Err(Error::OnCut(z, gas.r));
    }
    let (a, b, r, q) = (sol.a, sol.b, gas.r, gas.q);
    let d1 = tail_delta(a.sqrt(), b.sqrt(), a, b, z);
    let d2 = tail_delta((a + q).sqrt(), (b + q).sqrt(), a, b, z);
    Ok(match sol.regime {
        Regime::IA => -d1.ln_1p() - d2.ln_1p(),
        Regime::IB => d1.ln_1p() - d2.ln_1p(),
        Regime::IIA => {
            let d3 = tail_delta((r - a).sqrt(), (r - b).sqrt(), a, b, z);
            -(-r / z).ln_1p() - d1.ln_1p() - d2.ln_1p() + 2.0 * d3.ln_1p()
        }
        Regime::IIB => {
            let d3 = tail_delta((r - a).sqrt(), (r - b).sqrt(), a, b, z);
            -(-r / z).ln_1p() + 2.0 * d3.ln_1p() + d1.ln_1p() - d2.ln_1p()
        }
    })
}

/// Band density from the closed arctan forms. Regime IIB uses the form
/// derived from the resolvent discontinuity (edge limits 0 at `a`, 1 at
/// `b`); the rejected sign variant stays available in
/// [`band_density_iib_alternate`] for comparison.
pub fn band_density(mu: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if !(sol.a..=sol.b).contains(&mu) {
        return Err(Error::OutsideBand(mu, sol.a, sol.b));
    }
    let (a, b, r, q) = (sol.a, sol.b, gas.r, gas.q);
    let pi = std::f64::consts::PI;
    let t1 = ((a * (b - mu)) / (b * (mu - a))).sqrt().atan();
    let t2 = (((a + q) * (b - mu)) / ((b + q) * (mu - a))).sqrt().atan();
    Ok(match sol.regime {
        Regime::IA => (t1 + t2) / pi,
        Regime::IB => (-t1 + t2) / pi,
        Regime::IIA => {
            let t3 = (((r - a) * (b - mu)) / ((r - b) * (mu - a))).sqrt().atan();
            1.0 + (t1 + t2 - 2.0 * t3) / pi
        }
        Regime::IIB => {
            let t3 = (((r - a) * (b - mu)) / ((r - b) * (mu - a))).sqrt().atan();
            1.0 + (-t1 + t2 - 2.0 * t3) / pi
        }
    })
}

/// An alternate arctan sign combination sometimes quoted for the Regime
/// IIB profile. Its edge limits (-1 at `a`, 0 at `b`) contradict the
/// void/saturated gap structure, which is why [`band_density`] uses the
/// form derived from the resolvent discontinuity instead; this one stays
/// available to document the discrepancy.
pub fn band_density_iib_alternate(mu: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if sol.regime != Regime::IIB {
        return Err(Error::InvalidParams(
            "alternate variant exists only for Regime IIB".into(),
        ));
    }
    if !(sol.a..=sol.b).contains(&mu) {
        return Err(Error::OutsideBand(mu, sol.a, sol.b));
    }
    let (a, b, r, q) = (sol.a, sol.b, gas.r, gas.q);
    let pi = std::f64::consts::PI;
    let t1 = ((a * (b - mu)) / (b * (mu - a))).sqrt().atan();
    let t2 = (((a + q) * (b - mu)) / ((b + q) * (mu - a))).sqrt().atan();
    let t3 = (((r - a) * (b - mu)) / ((r - b) * (mu - a))).sqrt().atan();
    Ok((t1 - t2 - 2.0 * t3) / pi)
}

/// Full density profile on `[0, R]`: gap constants by regime, arctan form
/// on the band.
pub fn density_profile(mu: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if !(0.0..=gas.r).contains(&mu) {
        return Err(Error::Wall(mu, gas.r));
    }
    if mu < sol.a {
        return Ok(match sol.regime {
            Regime::IA | Regime::IIA => 1.0,
            Regime::IB | Regime::IIB => 0.0,
        });
    }
    if mu > sol.b {
        return Ok(match sol.regime {
            Regime::IA | Regime::IB => 0.0,
            Regime::IIA | Regime::IIB => 1.0,
        });
    }
    band_density(mu, sol, gas)
}

/// Density recovered from the resolvent discontinuity,
/// `-Im W(mu + i eps) / pi`. Converges to the profile as `eps -> 0` and is
/// the authority wherever a closed-form variant is in doubt.
pub fn density_oracle(mu: f64, eps: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if !(mu > 0.0 && mu < gas.r && eps > 0.0) {
        return Err(Error::Wall(mu, gas.r));
    }
    let w = resolvent(Complex64::new(mu, eps), sol, gas)?;
    Ok(-w.im / std::f64::consts::PI)
}

/// First moment of the equilibrium measure: the closed forms
/// `(Q+1) alpha/(1-alpha) + 1/2` (Regime I) and the A/B/C combination
/// (Regime II).
pub fn first_moment(sol: &RegimeSolution, gas: &GasParams) -> f64 {
    match sol.regime {
        Regime::IA | Regime::IB => (gas.q + 1.0) * gas.alpha / (1.0 - gas.alpha) + 0.5,
        Regime::IIA | Regime::IIB => {
            let abc = sol.abc.expect("regime II solution carries abc");
            gas.q * gas.q / 4.0 + (2.0 + gas.q) / 4.0 * (abc.a_plus + abc.a_minus)
                - gas.q / 4.0 * (abc.b_plus - abc.b_minus)
                + gas.r / 2.0 * (abc.c_plus - abc.c_minus)
        }
    }
}

/// Total mass of the profile: saturated gap lengths plus the band
/// quadrature. Equals 1 by the normalization constraint.
pub fn normalization(sol: &RegimeSolution, gas: &GasParams) -> f64 {
    let sat = match sol.regime {
        Regime::IA => sol.a,
        Regime::IB => 0.0,
        Regime::IIA => sol.a + (gas.r - sol.b),
        Regime::IIB => gas.r - sol.b,
    };
    sat + gauss::integrate_band(|mu| band_density(mu, sol, gas).unwrap_or(0.0), sol.a, sol.b)
}

/// First moment by quadrature over the profile (gaps analytic, band by
/// Gauss-Legendre); cross-checks [`first_moment`].
pub fn first_moment_quadrature(sol: &RegimeSolution, gas: &GasParams) -> f64 {
    let sat = match sol.regime {
        Regime::IA => sol.a * sol.a / 2.0,
        Regime::IB => 0.0,
        Regime::IIA => sol.a * sol.a / 2.0 + (gas.r * gas.r - sol.b * sol.b) / 2.0,
        Regime::IIB => (gas.r * gas.r - sol.b * sol.b) / 2.0,
    };
    sat + gauss::integrate_band(
        |mu| mu * band_density(mu, sol, gas).unwrap_or(0.0),
        sol.a,
        sol.b,
    )
}

/// Variational residual `|2 Re W(mu + i eps) - V'(mu)|` at a band point;
/// tends to zero linearly in `eps` on the band interior.
pub fn wwv_residual(mu: f64, eps: f64, sol: &RegimeSolution, gas: &GasParams) -> Result<f64> {
    if !(sol.a < mu && mu < sol.b) {
        return Err(Error::OutsideBand(mu, sol.a, sol.b));
    }
    let w = resolvent(Complex64::new(mu, eps), sol, gas)?;
    let (_, vp) = potential(mu, gas)?;
    Ok((2.0 * w.re - vp).abs())
}

/// Extracts the first moment from the `1/z^2` tail of the resolvent:
/// two-point Richardson of `z^2 (W(z) - 1/z)` at `z` and `2z`, which
/// cancels the `1/z` second-moment bias.
pub fn first_moment_from_tail(sol: &RegimeSolution, gas: &GasParams, z: f64) -> Result<f64> {
    let e_at = |zz: f64| -> Result<f64> {
        let w = resolvent_tail(zz, sol, gas)?;
        Ok(zz * zz * (w - 1.0 / zz))
    };
    Ok(2.0 * e_at(2.0 * z)? - e_at(z)?)
}
