//! Numeric carriers: exact big rationals and arbitrary-precision reals.
//!
//! The exact layer works in [`ExactScalar`] (an arbitrary-size rational,
//! serialized as `"p/q"`). Quantities that are irrational even for rational
//! inputs (square roots of weights, logarithms) live in [`RealScalar`], a
//! binary float with explicit precision in bits.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign as FloatSign};
use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Exact rational scalar: closed under `+ - * /`, decidable equality.
pub type ExactScalar = BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Parses `"p/q"` or a plain decimal string (`"0.125"`, `"3"`) into an
/// exact rational. Decimals convert exactly by powers of ten.
pub fn exact_from_str(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let den = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, frac_digits) = match s.split_once('.') {
        Some((int, frac)) => (format!("{int}{frac}"), frac.len() as u32),
        None => (s.to_string(), 0),
    };
    let num = BigInt::from_str(&mantissa).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    Ok(BigRational::new(num, BigInt::from(10u32).pow(frac_digits)))
}

/// Serializes a rational as `"p/q"` (always with an explicit denominator).
pub fn exact_to_string(x: &ExactScalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Natural log of a positive big integer, accurate to f64 precision even
/// when the integer itself overflows f64.
pub fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 63 {
        return (n.to_u64_digits().1.first().copied().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 63;
    let top: BigInt = n >> shift;
    let top = top.to_u64_digits().1[0] as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(x: &ExactScalar) -> Result<f64> {
    if !x.is_positive() {
        return Err(Error::LogDomain(0.0));
    }
    Ok(ln_bigint(x.numer()) - ln_bigint(x.denom()))
}

/// Exact rational power with integer exponent (negative allowed, nonzero base).
pub fn pow_rational(x: &ExactScalar, e: i64) -> ExactScalar {
    if e == 0 {
        return BigRational::one();
    }
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

fn bigint_to_bigfloat(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_i8(0, 64);
    }
    let (sign, words) = n.to_u64_digits();
    let s = if sign == Sign::Minus {
        FloatSign::Neg
    } else {
        FloatSign::Pos
    };
    BigFloat::from_words(&words, s, (words.len() * 64) as i32)
}

/// Arbitrary-precision real scalar. Every operation rounds to the larger
/// precision of its operands; precision propagates through compositions.
#[derive(Debug, Clone)]
pub struct RealScalar {
    value: BigFloat,
    prec_bits: usize,
}

impl RealScalar {
    pub fn from_u64(v: u64, prec_bits: usize) -> Self {
        Self {
            value: BigFloat::from_u64(v, prec_bits),
            prec_bits,
        }
    }

    pub fn from_f64(v: f64, prec_bits: usize) -> Self {
        Self {
            value: BigFloat::from_f64(v, prec_bits),
            prec_bits,
        }
    }

    pub fn from_bigint(n: &BigInt, prec_bits: usize) -> Self {
        let raw = bigint_to_bigfloat(n);
        // re-round to the requested precision
        let value = raw.add(&BigFloat::from_i8(0, prec_bits), prec_bits, RM);
        Self { value, prec_bits }
    }

    pub fn from_rational(x: &ExactScalar, prec_bits: usize) -> Self {
        let n = bigint_to_bigfloat(x.numer());
        let d = bigint_to_bigfloat(x.denom());
        Self {
            value: n.div(&d, prec_bits, RM),
            prec_bits,
        }
    }

    pub fn prec_bits(&self) -> usize {
        self.prec_bits
    }

    fn p(&self, rhs: &Self) -> usize {
        self.prec_bits.max(rhs.prec_bits)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self {
            value: self.value.add(&rhs.value, p, RM),
            prec_bits: p,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self {
            value: self.value.sub(&rhs.value, p, RM),
            prec_bits: p,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self {
            value: self.value.mul(&rhs.value, p, RM),
            prec_bits: p,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self {
            value: self.value.div(&rhs.value, p, RM),
            prec_bits: p,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            value: self.value.neg(),
            prec_bits: self.prec_bits,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            value: self.value.abs(),
            prec_bits: self.prec_bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        Self {
            value: self.value.sqrt(self.prec_bits, RM),
            prec_bits: self.prec_bits,
        }
    }

    pub fn ln(&self) -> Result<Self> {
        if self.is_sign_negative() || self.is_zero() {
            return Err(Error::LogDomain(self.to_f64()));
        }
        let mut cc = Consts::new().map_err(|e| Error::Numeric(format!("consts: {e:?}")))?;
        Ok(Self {
            value: self.value.ln(self.prec_bits, RM, &mut cc),
            prec_bits: self.prec_bits,
        })
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, e: u64) -> Self {
        let mut acc = Self::from_u64(1, self.prec_bits);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        self.value
            .abs()
            .partial_cmp(&rhs.value.abs())
            .unwrap_or(Ordering::Equal)
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _n, sign, exp, _inexact)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        // value = 0.mantissa * 2^exp, mantissa MSB-aligned in the top word
        let top = *words.last().unwrap_or(&0);
        let lower = if words.len() > 1 {
            words[words.len() - 2]
        } else {
            0
        };
        let frac = top as f64 / 2f64.powi(64) + lower as f64 / 2f64.powi(128);
        let v = frac * 2f64.powi(exp);
        if sign == FloatSign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal string at full stored precision.
    pub fn to_decimal_string(&self) -> String {
        let mut cc = match Consts::new() {
            Ok(cc) => cc,
            Err(_) => return "nan".to_string(),
        };
        self.value
            .format(Radix::Dec, RM, &mut cc)
            .unwrap_or_else(|_| "nan".to_string())
    }
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_rationals() {
        let x = exact_from_str("3/4").unwrap();
        assert_eq!(exact_to_string(&x), "3/4");
        let y = exact_from_str("0.125").unwrap();
        assert_eq!(y, BigRational::new(BigInt::from(1), BigInt::from(8)));
        let z = exact_from_str("2").unwrap();
        assert_eq!(exact_to_string(&z), "2/1");
        assert!(exact_from_str("1/0").is_err());
    }

    #[test]
    fn ln_of_huge_rational() {
        // ln(2^1000 / 3^500) = 1000 ln2 - 500 ln3
        let n = BigInt::from(2u32).pow(1000);
        let d = BigInt::from(3u32).pow(500);
        let x = BigRational::new(n, d);
        let expect = 1000.0 * std::f64::consts::LN_2 - 500.0 * 3f64.ln();
        assert!((ln_rational(&x).unwrap() - expect).abs() < 1e-9 * expect.abs());
    }

    #[test]
    fn real_scalar_roundtrips() {
        let x = RealScalar::from_rational(&exact_from_str("1/3").unwrap(), 256);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-15);
        let s = x.sqrt();
        assert!((s.to_f64() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let l = x.ln().unwrap();
        assert!((l.to_f64() + 3.0f64.ln()).abs() < 1e-15);
        let p = x.powi(7);
        assert!((p.to_f64() - (1.0 / 3.0f64).powi(7)).abs() < 1e-18);
        let big = BigInt::from(5u32).pow(100);
        let b = RealScalar::from_bigint(&big, 384);
        assert!((b.ln().unwrap().to_f64() - 100.0 * 5f64.ln()).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn real_arithmetic_tracks_f64(a in -1e6f64..1e6, b in 0.001f64..1e6) {
            let (x, y) = (RealScalar::from_f64(a, 128), RealScalar::from_f64(b, 128));
            proptest::prop_assert!((x.add(&y).to_f64() - (a + b)).abs() <= 1e-9 * (1.0 + (a + b).abs()));
            proptest::prop_assert!((x.mul(&y).to_f64() - a * b).abs() <= 1e-9 * (1.0 + (a * b).abs()));
            proptest::prop_assert!((x.div(&y).to_f64() - a / b).abs() <= 1e-9 * (1.0 + (a / b).abs()));
            proptest::prop_assert!((y.sqrt().to_f64() - b.sqrt()).abs() <= 1e-9 * (1.0 + b.sqrt()));
            proptest::prop_assert!((y.ln().unwrap().to_f64() - b.ln()).abs() <= 1e-9 * (1.0 + b.ln().abs()));
        }
    }

    #[test]
    fn pow_rational_handles_negative_exponents() {
        let x = exact_from_str("2/3").unwrap();
        assert_eq!(pow_rational(&x, 3), exact_from_str("8/27").unwrap());
        assert_eq!(pow_rational(&x, -2), exact_from_str("9/4").unwrap());
        assert_eq!(pow_rational(&x, 0), BigRational::one());
    }
}
