//! Exact and asymptotic thermodynamics of the six-vertex model in an
//! L-shaped domain, at the free-fermion point.
//!
//! An `N x N` square lattice with domain wall boundary conditions has an
//! `s x (s+q)` rectangle removed from a corner (`r = N - s - q`). The
//! partition function of the remaining L-shaped domain equals, up to
//! explicit factors, the emptiness formation probability `F[r,s,q]` of the
//! square-domain model, which this crate evaluates exactly as a Hankel
//! determinant over big rationals. In the thermodynamic limit the same
//! quantity is governed by a discrete Coulomb gas with two hard walls; the
//! crate carries the full closed-form solution of that gas (band
//! end-points, resolvents, densities, first moments in four regimes), the
//! limiting rate function `phi(x, y)` with its third-order phase
//! transition across the arctic ellipse, and a verification harness that
//! ties the finite-size data to the asymptotic formulas.
//!
//! Modules, bottom to top:
//!
//! - [`exactcore`]: exact finite-size partition functions, the EFP Hankel
//!   determinant, and the brute-force Coulomb sum oracle (big rationals).
//! - [`asympt`]: the scaled triangle, region classification, the eta root
//!   (closed form and bisection), the rate function and free energy per
//!   site, and the cubic transition coefficient.
//! - [`eqmeasure`]: equilibrium-measure machinery of the discrete Coulomb
//!   gas: regime classification, band end-points, resolvents, densities,
//!   and first moments.
//! - [`harness`]: convergence scans, transition fits, moment-derivative
//!   and resolvent consistency checks, and the named verification suites.
//! - [`cli`]: the command-line front end (see the `lshape` binary).
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `cargo run --example efp_exact`.

pub mod asympt;
pub mod cli;
pub mod eqmeasure;
pub mod exactcore;
mod gauss;
pub mod harness;
pub mod scalar;

pub use exactcore::{LshapeDims, ModelParams};
pub use scalar::{ExactScalar, RealScalar};

/// Crate-wide error type. Variant names mirror the conditions each layer
/// signals; see the operation docs for which ones can occur where.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate alpha: alpha = 0 with s >= 2 has no strict value; use limit mode")]
    DegenerateAlpha,
    #[error("oracle too large: {0}")]
    OracleTooLarge(String),
    #[error("s exceeds r: s = {s} > r = {r}")]
    SExceedsR { s: u32, r: u32 },
    #[error("point ({x}, {y}) outside the triangle 0 <= y <= min(x, 1 - x)")]
    OutsideTriangle { x: f64, y: f64 },
    #[error("boundary degenerate: formula undefined at x = 1 or y = 1")]
    BoundaryDegenerate,
    #[error("log domain: negative argument {0}")]
    LogDomain(f64),
    #[error("no eta root in the unit interval: {0}")]
    NoRootInUnitInterval(String),
    #[error("method disagreement: closed form {closed} vs bisection {bisect}")]
    MethodDisagreement { closed: f64, bisect: f64 },
    #[error("angle out of range: {0}")]
    AngleOutOfRange(String),
    #[error("arc degenerate: x + y = 1")]
    ArcDegenerate,
    #[error("wall: mu = {0} outside [0, {1}]")]
    Wall(f64, f64),
    #[error("on critical line: {0}")]
    OnCriticalLine(String),
    #[error("branch mismatch: neither nu branch satisfies the end-point equations")]
    BranchMismatch,
    #[error("no eta root: point not in Regime II (R = {r}, Q = {q}, alpha = {alpha})")]
    NoEtaRoot { r: f64, q: f64, alpha: f64 },
    #[error("on cut: z = {0} lies on the real segment [0, {1}]")]
    OnCut(f64, f64),
    #[error("outside band: mu = {0} not in [{1}, {2}]")]
    OutsideBand(f64, f64, f64),
    #[error("window below critical: {0}")]
    WindowBelowCritical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
