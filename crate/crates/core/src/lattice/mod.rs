//! Heegaard Floer correction term of a plumbed homology sphere from the
//! minimal norm of characteristic vectors of its intersection lattice.
//!
//! For a negative-definite unimodular form `M` of rank `s`, the
//! characteristic vectors form the coset `w + 2Z^s` (with `w` the Wu class)
//! and their norms in `-M` are all congruent to `s` mod 8. With `N_min` the
//! smallest such norm, `d = (s - N_min) / 4` and `delta = d / 2`.
//!
//! The search first LLL-reduces `-M` and splits off every norm-one vector:
//! an odd unimodular lattice is `Z^k + L0` with `L0` free of norm-one
//! vectors, the `Z^k` part contributes exactly `k`, and only `L0` is
//! enumerated, radius by radius.

mod enumerate;
mod frame;
mod lll;

pub use enumerate::Enumerator;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, IntMatrix, LinalgError};
use crate::plumbing::{self, PlumbingError};
use crate::seifert::{self, SeifertError, Summand};
use frame::Frame;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("form has determinant {0}, expected +-1")]
    NotUnimodular(BigInt),
    #[error("form is not negative definite")]
    NotNegativeDefinite,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("summand is not a Seifert homology sphere: {0}")]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub rank: usize,
    pub min_char_norm: i64,
    pub d: i64,
    pub delta: i64,
    #[serde(serialize_with = "crate::json::big_ints")]
    pub witness: Vec<BigInt>,
}

impl LatticeReport {
    /// Report of the empty lattice, i.e. of `S^3`.
    pub fn trivial() -> Self {
        LatticeReport {
            rank: 0,
            min_char_norm: 0,
            d: 0,
            delta: 0,
            witness: Vec::new(),
        }
    }
}

fn check_form(m: &IntMatrix) -> Result<(), LatticeError> {
    if !m.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let det = linalg::determinant(m);
    if !det.abs().is_one() {
        return Err(LatticeError::NotUnimodular(det));
    }
    if !linalg::is_negative_definite(m) {
        return Err(LatticeError::NotNegativeDefinite);
    }
    Ok(())
}

/// Move every norm-one vector of `frame` into `units`, making the
/// remaining frame vectors orthogonal to it.
fn split_units(frame: &mut Frame, units: &mut Vec<Vec<BigInt>>) -> bool {
    let mut any = false;
    while let Some(i) = (0..frame.len()).find(|&i| frame.gram[i][i].is_one()) {
        for j in 0..frame.len() {
            if j != i {
                let q = -&frame.gram[i][j];
                frame.add_multiple(j, i, &q);
            }
        }
        units.push(frame.remove(i));
        any = true;
    }
    any
}

/// Minimal norm of a characteristic vector of the positive-definite form
/// `-M`, with the derived `d` and `delta`.
pub fn min_characteristic_norm(m: &IntMatrix) -> Result<LatticeReport, LatticeError> {
    check_form(m)?;
    let s = m.dim();
    let q = m.neg();
    let wu = linalg::wu_class(m)?;

    let mut frame = Frame::new(&q);
    let mut units = Vec::new();
    lll::lll(&mut frame);
    loop {
        if split_units(&mut frame, &mut units) {
            lll::lll(&mut frame);
            continue;
        }
        if frame.is_empty() {
            break;
        }
        let e = Enumerator::new(&frame.gram_matrix())
            .ok_or_else(|| LatticeError::Internal("reduced form lost definiteness".into()))?;
        match e.first(&BigInt::one(), None, true) {
            Some(v) => {
                frame.make_basis_vector(&v);
            }
            None => break,
        }
    }

    // characteristic vectors of the remaining summand L0
    let core = frame.gram_matrix();
    let core_rank = core.dim();
    let core_wu = linalg::wu_class(&core)?;
    let enumerator = Enumerator::new(&core)
        .ok_or_else(|| LatticeError::Internal("reduced form lost definiteness".into()))?;
    let mut radius = core_rank % 8;
    let core_vec = loop {
        if radius > core_rank {
            return Err(LatticeError::Internal(format!(
                "no characteristic vector within the bound {core_rank}"
            )));
        }
        if let Some(v) = enumerator.first(&BigInt::from(radius), Some(&core_wu), false) {
            break v;
        }
        radius += 8;
    };
    let core_norm = core.quad_form(&core_vec);
    if core_norm != BigInt::from(radius) {
        return Err(LatticeError::Internal(format!(
            "core witness has norm {core_norm}, expected {radius}"
        )));
    }

    let mut witness = frame.combine(&core_vec);
    for u in &units {
        for (x, y) in witness.iter_mut().zip(u) {
            *x += y;
        }
    }
    let n_min = units.len() + radius;
    verify_witness(&q, &wu, &witness, n_min)?;

    let d = (s as i64 - n_min as i64) / 4;
    Ok(LatticeReport {
        rank: s,
        min_char_norm: n_min as i64,
        d,
        delta: d / 2,
        witness,
    })
}

fn verify_witness(
    q: &IntMatrix,
    wu: &[u8],
    witness: &[BigInt],
    n_min: usize,
) -> Result<(), LatticeError> {
    let parity_ok = witness.iter().zip(wu).all(|(x, &w)| x.is_odd() == (w == 1));
    if !parity_ok {
        return Err(LatticeError::Internal(
            "witness is not characteristic".into(),
        ));
    }
    let norm = q.quad_form(witness);
    if norm != BigInt::from(n_min) {
        return Err(LatticeError::Internal(format!(
            "witness norm {norm} differs from {n_min}"
        )));
    }
    if (witness.len() - n_min) % 8 != 0 {
        return Err(LatticeError::Internal(format!(
            "minimal norm {n_min} not congruent to rank {} mod 8",
            witness.len()
        )));
    }
    Ok(())
}

/// Lattice report of the standard-orientation (negative fibration) space
/// underlying a summand. Trivial summands give the empty report.
pub fn lattice_of(summand: &Summand) -> Result<LatticeReport, LatticeError> {
    if summand.is_trivial() {
        return Ok(LatticeReport::trivial());
    }
    let inv = seifert::normalize(&summand.exceptional())?;
    let graph = plumbing::build_plumbing(&inv)?;
    min_characteristic_norm(&graph.intersection_matrix())
}

/// `delta` of a summand, negated under orientation reversal.
pub fn delta_of(summand: &Summand) -> Result<i64, LatticeError> {
    let delta = lattice_of(summand)?.delta;
    Ok(if summand.is_reversed() { -delta } else { delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::Orientation;
    use num_traits::Zero;

    fn form_of(m: &[i64]) -> IntMatrix {
        let mults: Vec<BigInt> = m.iter().map(|&x| x.into()).collect();
        let inv = seifert::normalize(&mults).unwrap();
        plumbing::build_plumbing(&inv)
            .unwrap()
            .intersection_matrix()
    }

    #[test]
    fn e8_is_even() {
        let r = min_characteristic_norm(&form_of(&[2, 3, 5])).unwrap();
        assert_eq!((r.min_char_norm, r.d, r.delta), (0, 2, 1));
        assert!(r.witness.iter().all(Zero::is_zero));
    }

    #[test]
    fn sigma_237_is_diagonal() {
        let r = min_characteristic_norm(&form_of(&[2, 3, 7])).unwrap();
        assert_eq!((r.min_char_norm, r.d, r.delta), (4, 0, 0));
    }

    #[test]
    fn sigma_2311() {
        let r = min_characteristic_norm(&form_of(&[2, 3, 11])).unwrap();
        assert_eq!((r.rank, r.min_char_norm, r.d, r.delta), (9, 1, 2, 1));
    }

    #[test]
    fn diagonal_forms() {
        for s in 1..=6 {
            let m = IntMatrix::diagonal(&vec![-1i64; s]);
            let r = min_characteristic_norm(&m).unwrap();
            assert_eq!((r.min_char_norm, r.d), (s as i64, 0));
        }
    }

    #[test]
    fn rejects_bad_forms() {
        let even = IntMatrix::diagonal(&[-2i64, -1]);
        assert_eq!(
            min_characteristic_norm(&even),
            Err(LatticeError::NotUnimodular(2.into()))
        );
        let indefinite = IntMatrix::diagonal(&[-1i64, 1]);
        assert_eq!(
            min_characteristic_norm(&indefinite),
            Err(LatticeError::NotNegativeDefinite)
        );
        let asym = IntMatrix::from_rows(&[vec![-1i64, 1], vec![0, -1]]).unwrap();
        assert_eq!(
            min_characteristic_norm(&asym),
            Err(LatticeError::NotSymmetric)
        );
    }

    #[test]
    fn delta_examples() {
        let s = |m: &[i64], o| Summand::new(m, o);
        assert_eq!(delta_of(&s(&[2, 3, 5], Orientation::Positive)).unwrap(), 1);
        assert_eq!(delta_of(&s(&[2, 7, 27], Orientation::Positive)).unwrap(), 2);
        assert_eq!(delta_of(&s(&[2, 3, 5], Orientation::Reversed)).unwrap(), -1);
        assert_eq!(delta_of(&s(&[1, 3, 5], Orientation::Positive)).unwrap(), 0);
    }
}
