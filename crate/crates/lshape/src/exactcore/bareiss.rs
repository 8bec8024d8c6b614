//! Fraction-free determinant evaluation.
//!
//! Bareiss elimination keeps every intermediate entry an exact integer (a
//! minor of the original matrix), which bounds coefficient swell far better
//! than naive rational elimination. The pivots along the way are the
//! leading principal minors, which the callers use as a positive
//! definiteness certificate for moment matrices.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::scalar::RealScalar;

pub(crate) struct DetOutcome {
    pub det: BigInt,
    /// Leading principal minors `1x1 .. nxn`; `None` when row pivoting was
    /// required (the pivot sequence then no longer equals the minors).
    pub minors: Option<Vec<BigInt>>,
}

/// Exact determinant of an integer matrix by Bareiss elimination with row
/// pivoting on zero pivots. All divisions are exact by construction.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> DetOutcome {
    let n = m.len();
    if n == 0 {
        return DetOutcome {
            det: BigInt::one(),
            minors: Some(Vec::new()),
        };
    }
    let mut sign = 1i8;
    let mut swapped = false;
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return DetOutcome {
                    det: BigInt::zero(),
                    minors: None,
                };
            };
            m.swap(k, piv);
            sign = -sign;
            swapped = true;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
        minors.push(prev.clone());
    }
    minors.push(m[n - 1][n - 1].clone());
    let det = if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    };
    DetOutcome {
        det,
        minors: if swapped { None } else { Some(minors) },
    }
}

/// Determinant of a positive-precision real matrix via LU with partial
/// pivoting. Used by the real-arithmetic EFP path for irrational alpha.
pub(crate) fn lu_det_real(mut m: Vec<Vec<RealScalar>>) -> RealScalar {
    let n = m.len();
    if n == 0 {
        return RealScalar::from_u64(1, 64);
    }
    let prec = m[0][0].prec_bits();
    let mut det = RealScalar::from_u64(1, prec);
    let mut negate = false;
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            if m[i][k].cmp_abs(&m[piv][k]) == std::cmp::Ordering::Greater {
                piv = i;
            }
        }
        if piv != k {
            m.swap(k, piv);
            negate = !negate;
        }
        if m[k][k].is_zero() {
            return RealScalar::from_u64(0, prec);
        }
        det = det.mul(&m[k][k]);
        for i in k + 1..n {
            let f = m[i][k].div(&m[k][k]);
            for j in k + 1..n {
                let t = m[i][j].sub(&f.mul(&m[k][j]));
                m[i][j] = t;
            }
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(mat(&[&[3, 3], &[3, 5]])).det, BigInt::from(6));
        assert_eq!(bareiss_det(mat(&[&[2]])).det, BigInt::from(2));
        // needs a row swap
        let out = bareiss_det(mat(&[&[0, 1], &[1, 0]]));
        assert_eq!(out.det, BigInt::from(-1));
        assert!(out.minors.is_none());
        // singular
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[2, 4]])).det, BigInt::zero());
    }

    #[test]
    fn vandermonde_4x4() {
        // det V(x0..x3) with x = 1,2,3,4 -> prod_{i<j}(xj - xi) = 12
        let m: Vec<Vec<BigInt>> = (1..=4)
            .map(|x: i64| (0..4).map(|p| BigInt::from(x.pow(p))).collect())
            .collect();
        let out = bareiss_det(m);
        assert_eq!(out.det, BigInt::from(12));
    }

    #[test]
    fn minors_track_leading_principal_determinants() {
        let out = bareiss_det(mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]));
        let minors = out.minors.unwrap();
        assert_eq!(
            minors,
            vec![BigInt::from(2), BigInt::from(5), BigInt::from(18)]
        );
        assert_eq!(out.det, BigInt::from(18));
    }

    #[test]
    fn real_lu_matches_integer_path() {
        let m: Vec<Vec<RealScalar>> = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]
            .iter()
            .map(|r| r.iter().map(|&x| RealScalar::from_f64(x, 128)).collect())
            .collect();
        assert!((lu_det_real(m).to_f64() - 18.0).abs() < 1e-12);
    }
}
