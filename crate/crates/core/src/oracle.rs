//! Exhaustive references for the minimal characteristic norm.
//!
//! [`char_norm_oracle`] walks every `xi = w + 2z` with `z` in a box and
//! takes the smallest `(-M)`-norm; it is an upper bound that is exact once
//! the box is large enough. [`char_norm_oracle_dual`] walks characteristic
//! covectors in a box that provably contains a minimizer. Neither shares
//! code with the reduction and enumeration in [`crate::lattice`], and both
//! are meant for validation at desk scale only.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, LinalgError};

pub const MAX_ORACLE_RANK: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("rank {0} exceeds the exhaustive limit {MAX_ORACLE_RANK}")]
    RankTooLarge(usize),
    #[error("matrix entries exceed 64 bits")]
    EntryTooLarge,
    #[error("form is not unimodular")]
    NotUnimodular,
    #[error("radius must be non-negative")]
    NegativeRadius,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Minimal `(-M)`-norm over `xi = w + 2z`, `z` in `[-box_bound, box_bound]^s`.
pub fn char_norm_oracle(m: &IntMatrix, box_bound: i64) -> Result<i64, OracleError> {
    let ranges = vec![(-box_bound, box_bound); m.dim()];
    char_norm_oracle_ranges(m, &ranges)
}

fn to_i128(m: &IntMatrix, negate: bool) -> Result<Vec<Vec<i128>>, OracleError> {
    (0..m.dim())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    x.to_i64()
                        .map(|v| if negate { -(v as i128) } else { v as i128 })
                        .ok_or(OracleError::EntryTooLarge)
                })
                .collect()
        })
        .collect()
}

/// Same as [`char_norm_oracle`] with an independent `z` range per
/// coordinate.
pub fn char_norm_oracle_ranges(m: &IntMatrix, ranges: &[(i64, i64)]) -> Result<i64, OracleError> {
    let s = m.dim();
    if s > MAX_ORACLE_RANK {
        return Err(OracleError::RankTooLarge(s));
    }
    assert_eq!(ranges.len(), s);
    let wu = linalg::wu_class(m)?;
    let q = to_i128(m, true)?;
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(i64::MAX);
    }
    let lows = (0..s)
        .map(|i| wu[i] as i128 + 2 * ranges[i].0 as i128)
        .collect();
    let highs = (0..s)
        .map(|i| wu[i] as i128 + 2 * ranges[i].1 as i128)
        .collect();
    Ok(min_over_box(&q, lows, highs) as i64)
}

/// Exact minimal characteristic norm from the dual side.
///
/// With `K = M xi` the norm is `-K^T M^-1 K`, and `K` is characteristic
/// iff `K_v = M_vv (mod 2)`. A minimizer satisfies `|K_v| <= |M_vv|`:
/// otherwise `K -+ 2 e_v^*` lowers the norm by `4 (|K_v| - |M_vv|) > 0`.
/// The box `[-|M_vv|, |M_vv|]` in steps of 2 is therefore complete, with
/// no search radius to choose.
pub fn char_norm_oracle_dual(m: &IntMatrix) -> Result<i64, OracleError> {
    let s = m.dim();
    if s > MAX_ORACLE_RANK {
        return Err(OracleError::RankTooLarge(s));
    }
    let det = linalg::determinant(m);
    if det.abs() != BigInt::from(1) {
        return Err(OracleError::NotUnimodular);
    }
    let inv = linalg::inverse(m)?;
    let q: Vec<Vec<i128>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let x = -inv[i][j].to_integer();
                    x.to_i64().map(i128::from).ok_or(OracleError::EntryTooLarge)
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let bounds: Vec<i128> = (0..s)
        .map(|i| {
            m[(i, i)]
                .abs()
                .to_i64()
                .map(i128::from)
                .ok_or(OracleError::EntryTooLarge)
        })
        .collect::<Result<_, _>>()?;
    let lows = bounds.iter().map(|b| -b).collect();
    Ok(min_over_box(&q, lows, bounds) as i64)
}

/// Minimum of `x^T q x` over `x_i` in `lows_i, lows_i + 2, ..., highs_i`.
fn min_over_box(q: &[Vec<i128>], lows: Vec<i128>, highs: Vec<i128>) -> i128 {
    let s = q.len();
    let mut x = lows.clone();
    let mut qx: Vec<i128> = (0..s)
        .map(|i| (0..s).map(|j| q[i][j] * x[j]).sum())
        .collect();
    let mut norm: i128 = (0..s).map(|i| x[i] * qx[i]).sum();
    let mut best = norm;

    // add `delta` to coordinate i, keeping q x and the norm current
    let shift = |i: usize, delta: i128, x: &mut [i128], qx: &mut [i128], norm: &mut i128| {
        *norm += 2 * delta * qx[i] + delta * delta * q[i][i];
        x[i] += delta;
        for (k, v) in qx.iter_mut().enumerate() {
            *v += delta * q[k][i];
        }
    };

    'odometer: loop {
        let mut i = 0;
        loop {
            if i == s {
                break 'odometer;
            }
            if x[i] + 2 <= highs[i] {
                shift(i, 2, &mut x, &mut qx, &mut norm);
                break;
            }
            let span = x[i] - lows[i];
            shift(i, -span, &mut x, &mut qx, &mut norm);
            i += 1;
        }
        best = best.min(norm);
    }
    best
}

/// Per-coordinate `z` ranges covering every characteristic vector of
/// `(-M)`-norm at most `radius`, from `xi_i^2 <= radius * (M^-1)_ii` in
/// absolute value (Cauchy-Schwarz in the dual form).
pub fn cauchy_schwarz_ranges(m: &IntMatrix, radius: i64) -> Result<Vec<(i64, i64)>, OracleError> {
    if radius < 0 {
        return Err(OracleError::NegativeRadius);
    }
    let wu = linalg::wu_class(m)?;
    let inv = linalg::inverse(m)?;
    (0..m.dim())
        .map(|i| {
            let dual = inv[i][i].abs();
            let bound2 = (dual * BigInt::from(radius)).floor().to_integer();
            let bound = bound2.sqrt().to_i64().ok_or(OracleError::EntryTooLarge)?;
            let w = wu[i] as i64;
            // w + 2z in [-bound, bound]
            let lo = (-bound - w).div_euclid(2) + i64::from((-bound - w).rem_euclid(2) != 0);
            let hi = (bound - w).div_euclid(2);
            Ok((lo, hi))
        })
        .collect()
}
