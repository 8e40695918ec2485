//! Pin(2)-equivariant invariants alpha, beta, gamma of Seifert homology
//! spheres and of connected sums of projective-type negative Seifert spaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StoffregenError {
    #[error("connected sum needs at least one summand")]
    Empty,
    #[error("summand {index} is not certified projective")]
    NotCertified { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SingleNegative,
    SinglePositive,
    ConnectedSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManolescuSet {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub provenance: Provenance,
}

impl ManolescuSet {
    pub fn zero() -> Self {
        ManolescuSet {
            alpha: 0,
            beta: 0,
            gamma: 0,
            delta: 0,
            provenance: Provenance::SingleNegative,
        }
    }

    /// `alpha >= beta >= gamma`, all of the same parity.
    pub fn is_consistent(&self) -> bool {
        self.alpha >= self.beta
            && self.beta >= self.gamma
            && (self.alpha - self.beta) % 2 == 0
            && (self.beta - self.gamma) % 2 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SummandInvariants {
    pub delta: i64,
    pub mu_bar: i64,
    pub delta_tilde: i64,
}

impl SummandInvariants {
    pub fn new(delta: i64, mu_bar: i64) -> Self {
        SummandInvariants {
            delta,
            mu_bar,
            delta_tilde: delta + mu_bar,
        }
    }
}

fn same_parity(a: i64, b: i64) -> bool {
    (a - b).rem_euclid(2) == 0
}

/// Negative fibration: `beta = gamma = -mu_bar`, `alpha = delta` or
/// `delta + 1` to match the parity of `-mu_bar`.
pub fn single_negative(delta: i64, mu_bar: i64) -> ManolescuSet {
    let alpha = if same_parity(delta, -mu_bar) {
        delta
    } else {
        delta + 1
    };
    ManolescuSet {
        alpha,
        beta: -mu_bar,
        gamma: -mu_bar,
        delta,
        provenance: Provenance::SingleNegative,
    }
}

/// Positive fibration: `alpha = beta = -mu_bar`, `gamma = delta` or
/// `delta - 1`. Inputs are the invariants of the positive space itself.
pub fn single_positive(delta: i64, mu_bar: i64) -> ManolescuSet {
    let gamma = if same_parity(delta, -mu_bar) {
        delta
    } else {
        delta - 1
    };
    ManolescuSet {
        alpha: -mu_bar,
        beta: -mu_bar,
        gamma,
        delta,
        provenance: Provenance::SinglePositive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Certified,
    Unknown,
}

/// Projective type is certified only for `Sigma(p, q, pqk +- 1)` with
/// coprime `p, q >= 2` and `k >= 1`, in any order of the three entries.
pub fn is_projective_certified(mults: &[BigInt]) -> Certification {
    if mults.len() != 3 || mults.iter().any(|a| a < &BigInt::from(2)) {
        return Certification::Unknown;
    }
    for r in 0..3 {
        let p = &mults[(r + 1) % 3];
        let q = &mults[(r + 2) % 3];
        if !p.gcd(q).is_one() {
            continue;
        }
        let pq = p * q;
        for shift in [BigInt::one(), -BigInt::one()] {
            // third = pq k + shift
            let rest = &mults[r] - &shift;
            if rest.is_positive_multiple_of(&pq) {
                return Certification::Certified;
            }
        }
    }
    Certification::Unknown
}

trait PositiveMultiple {
    fn is_positive_multiple_of(&self, m: &BigInt) -> bool;
}

impl PositiveMultiple for BigInt {
    fn is_positive_multiple_of(&self, m: &BigInt) -> bool {
        self > &BigInt::zero() && self.is_multiple_of(m)
    }
}

/// `2 floor((S + 1) / 2) - mu_total`.
fn floor_term(partial: i64, mu_total: i64) -> i64 {
    2 * (partial + 1).div_euclid(2) - mu_total
}

/// The four integers compared by the connected-sum criterion, after the
/// summands have been put in ascending `delta` order: `sum delta`, then the
/// alpha, beta and gamma values built from the partial sums `S_n`,
/// `S_{n-1}`, `S_{n-2}` of `delta_tilde` (empty partial sums are 0).
pub fn connected_sum_integers(sorted: &[SummandInvariants]) -> [i64; 4] {
    let n = sorted.len();
    let mu_total: i64 = sorted.iter().map(|s| s.mu_bar).sum();
    let partial = |k: usize| -> i64 { sorted[..k].iter().map(|s| s.delta_tilde).sum() };
    [
        sorted.iter().map(|s| s.delta).sum(),
        floor_term(partial(n), mu_total),
        floor_term(partial(n.saturating_sub(1)), mu_total),
        floor_term(partial(n.saturating_sub(2)), mu_total),
    ]
}

/// Stable ascending sort by `delta`.
pub fn sort_by_delta(summands: &[SummandInvariants]) -> Vec<SummandInvariants> {
    let mut sorted = summands.to_vec();
    sorted.sort_by_key(|s| s.delta);
    sorted
}

/// True when reordering summands with equal `delta` could change the
/// result. Since each output is monotone in the excluded tail, comparing
/// the extreme tie-breaks (by `delta_tilde` ascending and descending)
/// settles every order.
pub fn tie_order_matters(summands: &[SummandInvariants]) -> bool {
    let mut asc = summands.to_vec();
    asc.sort_by_key(|s| (s.delta, s.delta_tilde));
    let mut desc = summands.to_vec();
    desc.sort_by_key(|s| (s.delta, -s.delta_tilde));
    connected_sum_integers(&asc) != connected_sum_integers(&desc)
}

/// Connected sum of negative projective-type summands. A single summand is
/// delegated to [`single_negative`].
pub fn connected_sum_negative(
    summands: &[SummandInvariants],
) -> Result<ManolescuSet, StoffregenError> {
    match summands {
        [] => Err(StoffregenError::Empty),
        [one] => Ok(single_negative(one.delta, one.mu_bar)),
        _ => {
            let [delta, alpha, beta, gamma] = connected_sum_integers(&sort_by_delta(summands));
            Ok(ManolescuSet {
                alpha,
                beta,
                gamma,
                delta,
                provenance: Provenance::ConnectedSum,
            })
        }
    }
}
