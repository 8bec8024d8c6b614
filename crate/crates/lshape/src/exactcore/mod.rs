//! Exact finite-size quantities of the free-fermion six-vertex model in an
//! L-shaped domain: the emptiness formation probability as a Hankel
//! determinant, partition functions, the brute-force Coulomb sum oracle,
//! and the closed-form Hahn Gram product for the `alpha -> 1` limit.
//!
//! Everything here is exact rational arithmetic unless a result is
//! irrational by nature (partition functions involve square roots of the
//! weights and return [`RealScalar`]). A real-arithmetic EFP path at
//! configurable precision covers irrational `alpha`.

mod bareiss;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{ln_bigint, ln_rational, pow_rational, ExactScalar, RealScalar};
use crate::{Error, Result};

/// Integer geometry of the L-shaped domain: an `N x N` lattice
/// (`N = r + s + q`) with an `s x (s+q)` corner rectangle removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LshapeDims {
    pub r: u32,
    pub s: u32,
    pub q: u32,
}

impl LshapeDims {
    /// Requires `r >= 1` (equivalently `s + q < N`).
    pub fn new(r: u32, s: u32, q: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidDims(format!(
                "r must be >= 1 (s + q < N); got r = {r}, s = {s}, q = {q}"
            )));
        }
        Ok(Self { r, s, q })
    }

    pub fn n(&self) -> u32 {
        self.r + self.s + self.q
    }
}

/// Bias `alpha in [0, 1]` and normalization `rho > 0`. The six Boltzmann
/// weights are `w1 = w2 = sqrt(rho(1-alpha))`, `w3 = w4 = sqrt(rho alpha)`,
/// `w5 = 1`, `w6 = rho`; the free-fermion combination
/// `w1 w2 + w3 w4 = w5 w6` reduces to the exact identity
/// `rho(1-alpha) + rho alpha = rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub alpha: ExactScalar,
    pub rho: ExactScalar,
}

impl ModelParams {
    pub fn new(alpha: ExactScalar, rho: ExactScalar) -> Result<Self> {
        if alpha.is_negative() || alpha > BigRational::one() {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if !rho.is_positive() {
            return Err(Error::InvalidParams(format!(
                "rho must be positive, got {rho}"
            )));
        }
        Ok(Self { alpha, rho })
    }

    /// `[w1, w2, w3, w4, w5, w6]` as floats, for display and f64 consumers.
    pub fn weights_f64(&self) -> [f64; 6] {
        let a = self.alpha.to_f64().unwrap_or(f64::NAN);
        let rho = self.rho.to_f64().unwrap_or(f64::NAN);
        let w12 = (rho * (1.0 - a)).sqrt();
        let w34 = (rho * a).sqrt();
        [w12, w12, w34, w34, 1.0, rho]
    }
}

/// Factorial/binomial memo table scoped to one evaluation context; create
/// one per computation (or per thread) rather than sharing globally.
#[derive(Debug, Default)]
pub struct EvalContext {
    fact: Vec<BigInt>,
}

impl EvalContext {
    pub fn new() -> Self {
        Self {
            fact: vec![BigInt::one(), BigInt::one()],
        }
    }

    pub fn factorial(&mut self, n: usize) -> BigInt {
        while self.fact.len() <= n {
            let k = self.fact.len();
            let next = &self.fact[k - 1] * BigInt::from(k);
            self.fact.push(next);
        }
        self.fact[n].clone()
    }

    pub fn binomial(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.factorial(n) / (self.factorial(k) * self.factorial(n - k))
    }
}

/// Discrete weight `C(q+m, q) alpha^m` of the gas charges.
pub fn meixner_weight(m: u32, q: u32, alpha: &ExactScalar, ctx: &mut EvalContext) -> ExactScalar {
    let binom = ctx.binomial((q + m) as usize, q as usize);
    BigRational::from(binom) * pow_rational(alpha, m as i64)
}

/// The `s x s` moment matrix `M[j][k] = sum_{m=0}^{r-1} m^{j+k-2} C(m+q, m) alpha^m`
/// (`1 <= j, k <= s`, with `0^0 = 1` so the `m = 0` term feeds `j = k = 1`).
pub fn hankel_matrix(dims: &LshapeDims, alpha: &ExactScalar) -> Result<Vec<Vec<ExactScalar>>> {
    if dims.s == 0 {
        return Err(Error::InvalidDims("hankel_matrix requires s >= 1".into()));
    }
    let s = dims.s as usize;
    let mut ctx = EvalContext::new();
    let mut moments = vec![BigRational::zero(); 2 * s - 1];
    for m in 0..dims.r {
        let w = meixner_weight(m, dims.q, alpha, &mut ctx);
        let mut cur = w;
        moments[0] += &cur;
        for slot in moments.iter_mut().skip(1) {
            cur *= BigRational::from(BigInt::from(m));
            *slot += &cur;
        }
    }
    Ok((0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect())
}

/// Scaled integer moments: with `alpha = p/d` in lowest terms, returns
/// `mom[t] = sum_m m^t C(m+q, m) p^m d^(r-1-m)` so that the true moment is
/// `mom[t] / d^(r-1)`. Keeps the whole elimination over integers.
fn scaled_moments(dims: &LshapeDims, alpha: &ExactScalar) -> (Vec<BigInt>, BigInt) {
    let s = dims.s as usize;
    let (p, d) = (alpha.numer().clone(), alpha.denom().clone());
    let mut ctx = EvalContext::new();
    let mut moments = vec![BigInt::zero(); (2 * s).max(2) - 1];
    // w_m = C(m+q, m) p^m d^(r-1-m), built incrementally
    let mut p_pow = BigInt::one();
    let mut d_pow = num::pow::pow(d.clone(), dims.r as usize - 1);
    for m in 0..dims.r {
        let w = ctx.binomial((dims.q + m) as usize, m as usize) * &p_pow * &d_pow;
        let mut cur = w;
        moments[0] += &cur;
        for slot in moments.iter_mut().skip(1) {
            cur *= BigInt::from(m);
            *slot += &cur;
        }
        p_pow *= &p;
        if m + 1 < dims.r {
            d_pow /= &d;
        }
    }
    (moments, d)
}

fn hankel_det_scaled(dims: &LshapeDims, alpha: &ExactScalar) -> (BigInt, BigInt) {
    let s = dims.s as usize;
    let (moments, d) = scaled_moments(dims, alpha);
    let matrix: Vec<Vec<BigInt>> = (0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect();
    (bareiss::bareiss_det(matrix).det, d)
}

/// Combinatorial prefactor of the determinant representation:
/// `(q!)^s / prod_{k=0}^{s-1} (q+k)! k!`.
fn det_prefactor(s: u32, q: u32, ctx: &mut EvalContext) -> ExactScalar {
    let mut acc = BigRational::one();
    let fq = ctx.factorial(q as usize);
    for k in 0..s {
        let den = ctx.factorial((q + k) as usize) * ctx.factorial(k as usize);
        acc *= BigRational::new(fq.clone(), den);
    }
    acc
}

/// How to treat the removable `alpha = 0` point when `s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    /// Return the polynomial limit `F = 1`.
    #[default]
    Limit,
    /// Signal [`Error::DegenerateAlpha`] instead.
    Strict,
}

/// Emptiness formation probability `F[r,s,q]` from the Hankel determinant,
/// exactly. `s = 0` gives 1; `alpha = 1` gives 0 for `s >= 1`; `alpha = 0`
/// follows the limit convention `F = 1`.
pub fn efp_hankel(dims: &LshapeDims, alpha: &ExactScalar) -> Result<ExactScalar> {
    efp_hankel_with(dims, alpha, AlphaMode::Limit)
}

pub fn efp_hankel_with(
    dims: &LshapeDims,
    alpha: &ExactScalar,
    mode: AlphaMode,
) -> Result<ExactScalar> {
    if alpha.is_negative() || alpha > &BigRational::one() {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    if dims.s == 0 {
        return Ok(BigRational::one());
    }
    if alpha.is_one() {
        return Ok(BigRational::zero());
    }
    if alpha.is_zero() {
        if dims.s >= 2 && mode == AlphaMode::Strict {
            return Err(Error::DegenerateAlpha);
        }
        return Ok(BigRational::one());
    }
    let (s, q) = (dims.s, dims.q);
    let (det_int, d) = hankel_det_scaled(dims, alpha);
    let det = BigRational::new(
        det_int,
        num::pow::pow(d, (dims.r - 1) as usize * s as usize),
    );
    let mut ctx = EvalContext::new();
    let pref = det_prefactor(s, q, &mut ctx);
    let one_minus = BigRational::one() - alpha;
    let f = pref
        * pow_rational(&one_minus, (s * (s + q)) as i64)
        * pow_rational(alpha, -((s as i64) * (s as i64 - 1) / 2))
        * det;
    Ok(f)
}

/// `ln F[r,s,q]` to f64 accuracy via the scaled integer determinant,
/// avoiding materializing the (astronomically long) reduced rational.
pub fn efp_ln(dims: &LshapeDims, alpha: &ExactScalar) -> Result<f64> {
    if dims.s == 0 {
        return Ok(0.0);
    }
    if alpha.is_zero() {
        return Ok(0.0);
    }
    if alpha.is_one() {
        return Ok(f64::NEG_INFINITY);
    }
    let (s, q) = (dims.s as i64, dims.q as i64);
    let ln_i = coulomb_log_sum(dims, alpha)?;
    let one_minus = BigRational::one() - alpha;
    Ok(s as f64 * (s + q) as f64 * ln_rational(&one_minus)?
        - (s * (s - 1) / 2) as f64 * ln_rational(alpha)?
        + ln_i)
}

/// `ln I[r,s,q]` (the Coulomb partition sum) via the exact determinant.
/// Requires `alpha in (0, 1)`.
pub fn coulomb_log_sum(dims: &LshapeDims, alpha: &ExactScalar) -> Result<f64> {
    if dims.s == 0 {
        return Ok(0.0);
    }
    if !alpha.is_positive() || alpha >= &BigRational::one() {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let (det_int, d) = hankel_det_scaled(dims, alpha);
    if !det_int.is_positive() {
        return Err(Error::Numeric(
            "hankel determinant not positive; moment matrix should be positive definite".into(),
        ));
    }
    let mut ctx = EvalContext::new();
    let pref = det_prefactor(dims.s, dims.q, &mut ctx);
    Ok(ln_rational(&pref)? + ln_bigint(&det_int)
        - (dims.r as f64 - 1.0) * dims.s as f64 * ln_bigint(&d))
}

/// Positive definiteness certificate for the moment matrix: all leading
/// principal minors positive. Holds for `alpha in (0, 1)` and `s <= r`.
pub fn hankel_minors_positive(dims: &LshapeDims, alpha: &ExactScalar) -> Result<bool> {
    if dims.s == 0 {
        return Ok(true);
    }
    let s = dims.s as usize;
    let (moments, _d) = scaled_moments(dims, alpha);
    let matrix: Vec<Vec<BigInt>> = (0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect();
    let out = bareiss::bareiss_det(matrix);
    Ok(out
        .minors
        .map(|ms| ms.iter().all(|m| m.is_positive()))
        .unwrap_or(false))
}

/// Size guards for the brute-force oracle.
pub const ORACLE_MAX_S: u32 = 4;
pub const ORACLE_MAX_TERMS: u64 = 10_000_000;

/// Brute-force `s`-fold Coulomb sum: `I[r,s,q]` as the sum over charge
/// configurations with squared Vandermonde and Meixner weights, and the
/// probability `F = (1-alpha)^{s(s+q)} alpha^{-s(s-1)/2} I`. Exists purely
/// to cross-validate [`efp_hankel`] at tiny sizes.
pub fn coulomb_sum_oracle(
    dims: &LshapeDims,
    alpha: &ExactScalar,
) -> Result<(ExactScalar, ExactScalar)> {
    let (r, s, q) = (dims.r, dims.s, dims.q);
    if s > ORACLE_MAX_S {
        return Err(Error::OracleTooLarge(format!("s = {s} > {ORACLE_MAX_S}")));
    }
    let terms = (r as u64).checked_pow(s).filter(|&t| t <= ORACLE_MAX_TERMS);
    if terms.is_none() {
        return Err(Error::OracleTooLarge(format!(
            "r^s = {r}^{s} > {ORACLE_MAX_TERMS}"
        )));
    }
    if s == 0 {
        return Ok((BigRational::one(), BigRational::one()));
    }
    if alpha.is_zero() {
        // polynomial limit: lowest surviving power of alpha cancels exactly
        let i = if s == 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        return Ok((i, BigRational::one()));
    }
    let mut ctx = EvalContext::new();
    let binoms: Vec<BigInt> = (0..r)
        .map(|m| ctx.binomial((q + m) as usize, q as usize))
        .collect();
    let alpha_pows: Vec<ExactScalar> = (0..=(s as i64 * (r as i64 - 1)))
        .map(|e| pow_rational(alpha, e))
        .collect();
    let mut config = vec![0u32; s as usize];
    let mut sum = BigRational::zero();
    'configs: loop {
        // squared Vandermonde over the configuration
        let mut vand = BigInt::one();
        'pairs: for j in 0..s as usize {
            for k in j + 1..s as usize {
                if config[j] == config[k] {
                    vand = BigInt::zero();
                    break 'pairs;
                }
                let diff = BigInt::from(config[j] as i64 - config[k] as i64);
                vand *= &diff * &diff;
            }
        }
        if !vand.is_zero() {
            let mut weight = vand;
            let mut total_m = 0u32;
            for &m in &config {
                weight *= &binoms[m as usize];
                total_m += m;
            }
            sum += BigRational::from(weight) * &alpha_pows[total_m as usize];
        }
        // odometer over {0..r-1}^s
        for slot in config.iter_mut() {
            *slot += 1;
            if *slot < r {
                continue 'configs;
            }
            *slot = 0;
        }
        break;
    }
    let mut pref = BigRational::new(BigInt::one(), ctx.factorial(s as usize));
    let fq = ctx.factorial(q as usize);
    for j in 0..s {
        let den = ctx.factorial(j as usize) * ctx.factorial((j + q) as usize);
        pref *= BigRational::new(fq.clone(), den);
    }
    let i_val = pref * sum;
    let one_minus = BigRational::one() - alpha;
    let f = pow_rational(&one_minus, (s * (s + q)) as i64)
        * pow_rational(alpha, -((s as i64) * (s as i64 - 1) / 2))
        * &i_val;
    Ok((i_val, f))
}

/// Gram determinant of the Hahn orthogonality relation: the closed product
/// equal to the `alpha = 1` Hankel determinant
/// `det[sum_{m<r} m^{j+k-2} C(m+q, m)]`. Requires `s <= r`.
pub fn hahn_gram_product(dims: &LshapeDims) -> Result<ExactScalar> {
    let (r, s, q) = (dims.r as usize, dims.s as usize, dims.q as usize);
    if s > r {
        return Err(Error::SExceedsR {
            s: dims.s,
            r: dims.r,
        });
    }
    let mut ctx = EvalContext::new();
    let mut acc = BigRational::one();
    for j in 0..s {
        let jq = ctx.factorial(j) * ctx.factorial(j + q);
        let num = &jq * &jq * ctx.factorial(j + q + r);
        let den = ctx.factorial(q)
            * ctx.factorial(r - j - 1)
            * ctx.factorial(2 * j + q)
            * ctx.factorial(2 * j + q + 1);
        acc *= BigRational::new(num, den);
    }
    Ok(acc)
}

/// Leading coefficient of `F[r,s,q]` at `alpha -> 1`:
/// `lim F / (1-alpha)^{s(s+q)}`, i.e. the determinant prefactor times the
/// Hahn Gram product.
pub fn efp_alpha1_coefficient(dims: &LshapeDims) -> Result<ExactScalar> {
    let mut ctx = EvalContext::new();
    Ok(det_prefactor(dims.s, dims.q, &mut ctx) * hahn_gram_product(dims)?)
}

/// Square-domain partition function `Z_N = w5^{N(N-1)/2} w6^{N(N+1)/2}`,
/// which the weight parametrization collapses to `rho^{N(N+1)/2}`.
pub fn partition_square(n: u32, params: &ModelParams, prec_bits: usize) -> Result<RealScalar> {
    if n == 0 {
        return Err(Error::InvalidDims("N must be >= 1".into()));
    }
    let rho = RealScalar::from_rational(&params.rho, prec_bits);
    Ok(rho.powi(n as u64 * (n as u64 + 1) / 2))
}

/// L-shaped partition function `Z[r,s,q] = Z_N F[r,s,q] / w2^{s(s+q)}`.
/// Reduces to `Z_N` at `s = 0`.
pub fn partition_lshape(
    dims: &LshapeDims,
    params: &ModelParams,
    prec_bits: usize,
) -> Result<RealScalar> {
    let zn = partition_square(dims.n(), params, prec_bits)?;
    if dims.s == 0 {
        return Ok(zn);
    }
    let f = efp_hankel(dims, &params.alpha)?;
    let f_real = RealScalar::from_rational(&f, prec_bits);
    // w2^{s(s+q)} = (rho (1 - alpha))^{s(s+q)/2}, odd exponents take one sqrt
    let base_rat = &params.rho * (BigRational::one() - &params.alpha);
    if base_rat.is_zero() {
        return Err(Error::InvalidParams("alpha = 1 makes w2 = 0".into()));
    }
    let base = RealScalar::from_rational(&base_rat, prec_bits);
    let e = dims.s as u64 * (dims.s + dims.q) as u64;
    let mut w2_pow = base.powi(e / 2);
    if e % 2 == 1 {
        w2_pow = w2_pow.mul(&base.sqrt());
    }
    Ok(zn.mul(&f_real).div(&w2_pow))
}

/// Real-arithmetic EFP path for irrational `alpha`, at the precision of
/// the input scalar.
pub fn efp_real(dims: &LshapeDims, alpha: &RealScalar) -> Result<RealScalar> {
    let prec = alpha.prec_bits();
    if dims.s == 0 {
        return Ok(RealScalar::from_u64(1, prec));
    }
    let s = dims.s as usize;
    let mut ctx = EvalContext::new();
    let mut moments = vec![RealScalar::from_u64(0, prec); 2 * s - 1];
    let mut alpha_pow = RealScalar::from_u64(1, prec);
    for m in 0..dims.r {
        let binom = ctx.binomial((dims.q + m) as usize, m as usize);
        let w = RealScalar::from_bigint(&binom, prec).mul(&alpha_pow);
        let m_real = RealScalar::from_u64(m as u64, prec);
        let mut cur = w;
        moments[0] = moments[0].add(&cur);
        for slot in moments.iter_mut().skip(1) {
            cur = cur.mul(&m_real);
            *slot = slot.add(&cur);
        }
        alpha_pow = alpha_pow.mul(alpha);
    }
    let matrix: Vec<Vec<RealScalar>> = (0..s)
        .map(|j| (0..s).map(|k| moments[j + k].clone()).collect())
        .collect();
    let det = bareiss::lu_det_real(matrix);
    let pref = RealScalar::from_rational(&det_prefactor(dims.s, dims.q, &mut ctx), prec);
    let one = RealScalar::from_u64(1, prec);
    let one_minus = one.sub(alpha);
    let num = pref
        .mul(&one_minus.powi(dims.s as u64 * (dims.s + dims.q) as u64))
        .mul(&det);
    let den = alpha.powi(dims.s as u64 * (dims.s as u64 - 1) / 2);
    Ok(num.div(&den))
}
