//! Full invariant report for a presentation and the positive-scalar-curvature
//! obstruction verdicts derived from it.
//!
//! Every verdict has one-sided error. `Obstructed` follows from a published
//! criterion applied to exactly computed integers. `Inconclusive` only means
//! the computed integers do not trigger the criterion; the invariants
//! `delta-bar`, `delta-underbar` and `kappa` are never computed, so an
//! inconclusive verdict is not a claim that a PSC metric exists.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, LatticeError, LatticeReport};
use crate::plumbing::{self, PlumbingError, WuReport};
use crate::seifert::{self, Orientation, SeifertError, SeifertPresentation, Summand};
use crate::stoffregen::{self, Certification, ManolescuSet, StoffregenError, SummandInvariants};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Stoffregen(#[from] StoffregenError),
    #[error("connected sum mixes orientations or contains reversed summands; pass --assume-projective to compute anyway")]
    MixedOrientation,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    /// Treat every summand of a connected sum as negative projective type.
    pub assume_projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub summand: String,
    pub orientation: Orientation,
    pub certification: Certification,
    /// Wu data of the negative-definite plumbing of the standard
    /// orientation; absent for summands diffeomorphic to `S^3`.
    pub plumbing_wu: Option<WuReport>,
    /// Lattice data of the same plumbing.
    pub lattice: LatticeReport,
    /// `delta` and `mu_bar` of the summand as oriented.
    pub invariants: SummandInvariants,
}

pub const LAMBDA_SW_STATEMENT: &str = "IF a PSC cross-section pair exists, then lambda_SW = delta";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub presentation: String,
    pub summands: Vec<SummandReport>,
    pub manolescu: ManolescuSet,
    pub mu_bar_total: i64,
    pub rokhlin_total: u8,
    pub implied_lambda_sw: i64,
    pub lambda_sw_statement: &'static str,
    pub uncertified: bool,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    fn active(&self) -> impl Iterator<Item = &SummandReport> {
        self.summands.iter().filter(|s| s.plumbing_wu.is_some())
    }

    fn active_invariants(&self) -> Vec<SummandInvariants> {
        self.active().map(|s| s.invariants).collect()
    }

    /// Number of summands not diffeomorphic to `S^3`.
    pub fn nontrivial_count(&self) -> usize {
        self.active().count()
    }

    pub fn delta(&self) -> i64 {
        self.manolescu.delta
    }
}

struct Computed {
    wu: WuReport,
    lattice: LatticeReport,
}

fn compute_standard(mults: &[BigInt]) -> Result<Computed, ObstructionError> {
    let inv = seifert::normalize(mults)?;
    let graph = plumbing::build_plumbing(&inv)?;
    let m = graph.intersection_matrix();
    let wu = plumbing::mu_bar_of_form(&m)?;
    let lattice = lattice::min_characteristic_norm(&m)?;
    Ok(Computed { wu, lattice })
}

fn summand_key(s: &Summand) -> Vec<BigInt> {
    let mut key = s.exceptional();
    key.sort();
    key
}

/// Compute every per-summand invariant and aggregate them.
pub fn analyze(
    presentation: &SeifertPresentation,
    options: Options,
) -> Result<InvariantReport, ObstructionError> {
    // Each distinct space is computed once.
    let mut keys: Vec<Vec<BigInt>> = presentation.nontrivial().map(summand_key).collect();
    keys.sort();
    keys.dedup();
    let computed: HashMap<Vec<BigInt>, Computed> = keys
        .into_par_iter()
        .map(|k| compute_standard(&k).map(|c| (k, c)))
        .collect::<Result<_, _>>()?;

    let summands: Vec<SummandReport> = presentation
        .summands
        .iter()
        .map(|s| summand_report(s, computed.get(&summand_key(s))))
        .collect();

    let mut report = InvariantReport {
        presentation: presentation.to_string(),
        mu_bar_total: 0,
        rokhlin_total: 0,
        implied_lambda_sw: 0,
        lambda_sw_statement: LAMBDA_SW_STATEMENT,
        uncertified: false,
        warnings: Vec::new(),
        manolescu: ManolescuSet::zero(),
        summands,
    };
    aggregate(&mut report, options)?;
    Ok(report)
}

fn summand_report(s: &Summand, computed: Option<&Computed>) -> SummandReport {
    let orientation = s.orientation;
    let Some(c) = computed.filter(|_| !s.is_trivial()) else {
        return SummandReport {
            summand: s.to_string(),
            orientation,
            certification: Certification::Certified,
            plumbing_wu: None,
            lattice: LatticeReport::trivial(),
            invariants: SummandInvariants::new(0, 0),
        };
    };
    // both invariants negate under orientation reversal
    let sign = if s.is_reversed() { -1 } else { 1 };
    SummandReport {
        summand: s.to_string(),
        orientation,
        certification: stoffregen::is_projective_certified(&s.exceptional()),
        plumbing_wu: Some(c.wu.clone()),
        lattice: c.lattice.clone(),
        invariants: SummandInvariants::new(sign * c.lattice.delta, sign * c.wu.mu_bar),
    }
}

fn aggregate(report: &mut InvariantReport, options: Options) -> Result<(), ObstructionError> {
    let invariants = report.active_invariants();
    let orientations: Vec<Orientation> = report.active().map(|s| s.orientation).collect();
    let uncertified = report
        .summands
        .iter()
        .position(|s| s.plumbing_wu.is_some() && s.certification != Certification::Certified);
    let mut warnings = Vec::new();

    let manolescu = match (invariants.as_slice(), orientations.as_slice()) {
        ([], _) => ManolescuSet::zero(),
        ([inv], [Orientation::Reversed]) => stoffregen::single_positive(inv.delta, inv.mu_bar),
        ([inv], _) => stoffregen::single_negative(inv.delta, inv.mu_bar),
        (many, _) => {
            let reversed = orientations.contains(&Orientation::Reversed);
            if !options.assume_projective {
                if reversed {
                    return Err(ObstructionError::MixedOrientation);
                }
                if let Some(index) = uncertified {
                    return Err(StoffregenError::NotCertified { index }.into());
                }
            }
            if reversed || uncertified.is_some() {
                report.uncertified = true;
                warnings.push(
                    "computed under --assume-projective; the connected-sum formula is not certified for these summands"
                        .to_string(),
                );
            }
            if stoffregen::tie_order_matters(many) {
                warnings.push(
                    "summands with equal delta but different delta+mu_bar: the result depends on the tie order (input order used)"
                        .to_string(),
                );
            }
            stoffregen::connected_sum_negative(many)?
        }
    };
    report.mu_bar_total = invariants.iter().map(|s| s.mu_bar).sum();
    report.rokhlin_total = report.mu_bar_total.rem_euclid(2) as u8;
    report.implied_lambda_sw = manolescu.delta;
    report.manolescu = manolescu;
    report.warnings = warnings;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Glued,
    MuBar,
    ConnectedSum,
    LinParity,
    Embedding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Obstructed,
    Inconclusive,
}

impl Outcome {
    fn from_flag(obstructed: bool) -> Self {
        if obstructed {
            Outcome::Obstructed
        } else {
            Outcome::Inconclusive
        }
    }

    pub fn is_obstructed(self) -> bool {
        self == Outcome::Obstructed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: Criterion,
    pub outcome: Outcome,
    pub witness: Vec<i64>,
    pub citation: &'static str,
}

pub const CITE_GLUED: &str = "Glued homology S1xS3 corollary: if at least two of alpha, beta, gamma, delta, delta-bar, delta-underbar, kappa of a cross-section differ, the glued manifold admits no PSC metric. Only alpha, beta, gamma, delta are computed; inconclusive is not a PSC existence claim.";
pub const CITE_MU_BAR: &str = "Seifert cross-section theorem: a homology S1xS3 with a cross-section homology cobordant to a Seifert space Y' with -mu_bar(Y') != delta(Y') admits no PSC metric. Applies to every Y homology cobordant to Y'.";
pub const CITE_CONNECTED_SUM: &str = "Connected-sum theorem: for negative projective-type Seifert summands ordered by ascending delta, if at least two of sum delta and the three floor-formula integers built from partial sums of delta + mu_bar are distinct, no PSC metric exists.";
pub const CITE_LIN_PARITY: &str = "Parity criterion: a homology S1xS3 with a cross-section Y such that mu(Y) != delta(Y) mod 2 admits no PSC metric.";
pub const CITE_EMBEDDING: &str = "Embedding corollary: if at least two of alpha, beta, gamma, delta, delta-bar, delta-underbar, kappa differ, Y admits no smooth embedding into a closed spin 4-manifold with a PSC metric and b2 = 0. Only alpha, beta, gamma, delta are computed; inconclusive is not an embedding claim.";

fn not_all_equal(xs: &[i64]) -> bool {
    xs.windows(2).any(|w| w[0] != w[1])
}

fn distinctness_witness(report: &InvariantReport) -> Vec<i64> {
    let m = &report.manolescu;
    vec![m.alpha, m.beta, m.gamma, m.delta]
}

/// At least two of the computed `alpha, beta, gamma, delta` differ.
pub fn verdict_glued(report: &InvariantReport) -> Verdict {
    let witness = distinctness_witness(report);
    Verdict {
        criterion: Criterion::Glued,
        outcome: Outcome::from_flag(not_all_equal(&witness)),
        witness,
        citation: CITE_GLUED,
    }
}

/// Same predicate as [`verdict_glued`] with the embedding statement.
pub fn verdict_embedding(report: &InvariantReport) -> Verdict {
    Verdict {
        criterion: Criterion::Embedding,
        citation: CITE_EMBEDDING,
        ..verdict_glued(report)
    }
}

/// `-mu_bar != delta` for a single Seifert summand (or `S^3`). Witness is
/// `[-mu_bar, delta]`. `None` for connected sums of two or more spaces.
pub fn verdict_mu_bar(report: &InvariantReport) -> Option<Verdict> {
    if report.nontrivial_count() > 1 {
        return None;
    }
    let witness = vec![-report.mu_bar_total, report.delta()];
    Some(Verdict {
        criterion: Criterion::MuBar,
        outcome: Outcome::from_flag(witness[0] != witness[1]),
        witness,
        citation: CITE_MU_BAR,
    })
}

/// The four connected-sum integers `[sum delta, a, b, c]` in ascending
/// `delta` order, obstructed unless all four coincide.
pub fn verdict_connected_sum(summands: &[SummandInvariants]) -> Verdict {
    let witness = stoffregen::connected_sum_integers(&stoffregen::sort_by_delta(summands)).to_vec();
    Verdict {
        criterion: Criterion::ConnectedSum,
        outcome: Outcome::from_flag(not_all_equal(&witness)),
        witness,
        citation: CITE_CONNECTED_SUM,
    }
}

/// [`verdict_connected_sum`] on a report, checking its hypotheses: every
/// nontrivial summand in standard orientation and certified projective.
pub fn verdict_connected_sum_of(
    report: &InvariantReport,
    options: Options,
) -> Result<Verdict, ObstructionError> {
    if !options.assume_projective {
        for (index, s) in report.summands.iter().enumerate() {
            if s.plumbing_wu.is_none() {
                continue;
            }
            if s.orientation == Orientation::Reversed {
                return Err(ObstructionError::MixedOrientation);
            }
            if s.certification != Certification::Certified {
                return Err(StoffregenError::NotCertified { index }.into());
            }
        }
    }
    Ok(verdict_connected_sum(&report.active_invariants()))
}

/// Rokhlin invariant against `delta` mod 2. Witness is
/// `[rokhlin, delta mod 2]`.
pub fn verdict_lin_parity(report: &InvariantReport) -> Verdict {
    let witness = vec![
        i64::from(report.rokhlin_total),
        report.delta().rem_euclid(2),
    ];
    Verdict {
        criterion: Criterion::LinParity,
        outcome: Outcome::from_flag(witness[0] != witness[1]),
        witness,
        citation: CITE_LIN_PARITY,
    }
}

/// Every applicable verdict in a fixed order. Criteria whose hypotheses
/// fail for this report are left out.
pub fn all_verdicts(report: &InvariantReport, options: Options) -> Vec<Verdict> {
    let mut out = vec![verdict_glued(report)];
    out.extend(verdict_mu_bar(report));
    out.extend(verdict_connected_sum_of(report, options).ok());
    out.push(verdict_lin_parity(report));
    out.push(verdict_embedding(report));
    out
}
