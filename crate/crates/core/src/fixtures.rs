//! Golden corpus and the self-test that replays it.
//!
//! The corpus is JSON Lines, one case per line:
//! `{"expr": ..., "expected": {...}, "status": "normative" | "disputed"}`.
//! Every `expected` field is optional; only the fields present are checked.
//! A mismatch on a disputed case is reported as `KNOWN-DISPUTED` and never
//! fails the run.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::lattice;
use crate::obstruction::{Criterion, Options, Outcome};
use crate::oracle::{self, MAX_ORACLE_RANK};
use crate::plumbing;
use crate::record::{self, OutputRecord};
use crate::seifert;

pub const GOLDEN: &str = include_str!("../fixtures/golden.jsonl");

/// Largest rank replayed against the exhaustive oracle.
pub const ORACLE_RANK_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Normative,
    Disputed,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub mu_bar: Option<i64>,
    pub delta: Option<i64>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    pub min_char_norm: Option<i64>,
    pub verdicts: Option<BTreeMap<Criterion, Outcome>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub expr: String,
    #[serde(default)]
    pub expected: Expected,
    pub status: Status,
    #[serde(default)]
    pub note: Option<String>,
    /// 1-based line in the corpus file.
    #[serde(skip)]
    pub line: usize,
}

impl Fixture {
    pub fn name(&self) -> String {
        format!("line {}: {}", self.line, self.expr)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("fixture line {line}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub message: String,
}

/// Parse a corpus. Blank lines and lines starting with `#` are skipped.
pub fn load(text: &str) -> Result<Vec<Fixture>, FixtureError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let mut f: Fixture = serde_json::from_str(l).map_err(|e| FixtureError {
                line: i + 1,
                message: e.to_string(),
            })?;
            f.line = i + 1;
            Ok(f)
        })
        .collect()
}

pub fn golden() -> Vec<Fixture> {
    load(GOLDEN).expect("embedded corpus parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Pass,
    Fail,
    KnownDisputed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub status: CaseStatus,
    pub diffs: Vec<String>,
}

/// Differences between a computed record and the expectations.
pub fn diff(expected: &Expected, record: &OutputRecord) -> Vec<String> {
    let r = &record.report;
    let m = &r.manolescu;
    let mut out = Vec::new();
    let mut check = |field: &str, want: Option<i64>, got: i64| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{field}: expected {w}, got {got}"));
            }
        }
    };
    check("mu_bar", expected.mu_bar, r.mu_bar_total);
    check("delta", expected.delta, m.delta);
    check("alpha", expected.alpha, m.alpha);
    check("beta", expected.beta, m.beta);
    check("gamma", expected.gamma, m.gamma);
    if let Some(w) = expected.min_char_norm {
        let got: i64 = r.summands.iter().map(|s| s.lattice.min_char_norm).sum();
        if w != got {
            out.push(format!("min_char_norm: expected {w}, got {got}"));
        }
    }
    for (criterion, want) in expected.verdicts.iter().flatten() {
        match record.verdicts.iter().find(|v| v.criterion == *criterion) {
            None => out.push(format!(
                "verdict {criterion:?}: expected {want:?}, not produced"
            )),
            Some(v) if v.outcome != *want => out.push(format!(
                "verdict {criterion:?}: expected {want:?}, got {:?}",
                v.outcome
            )),
            Some(_) => {}
        }
    }
    out
}

pub fn run_case(f: &Fixture) -> CaseResult {
    let diffs = match record::evaluate(&f.expr, Options::default()) {
        Ok(rec) => diff(&f.expected, &rec),
        Err(e) => vec![format!("evaluation failed: {}", e.message)],
    };
    let status = match (diffs.is_empty(), f.status) {
        (true, _) => CaseStatus::Pass,
        (false, Status::Disputed) => CaseStatus::KnownDisputed,
        (false, Status::Normative) => CaseStatus::Fail,
    };
    CaseResult {
        name: f.name(),
        status,
        diffs,
    }
}

/// Lattice search against the exhaustive oracle, and against a relabeled
/// plumbing, for one summand given by its exceptional multiplicities.
pub fn oracle_case(mults: &[BigInt]) -> Option<CaseResult> {
    let label = format!(
        "oracle Sigma({})",
        mults
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let run = || -> Result<Option<Vec<String>>, String> {
        let inv = seifert::normalize(mults).map_err(|e| e.to_string())?;
        let graph = plumbing::build_plumbing(&inv).map_err(|e| e.to_string())?;
        if graph.rank() > ORACLE_RANK_LIMIT.min(MAX_ORACLE_RANK) {
            return Ok(None);
        }
        let m = graph.intersection_matrix();
        let fast = lattice::min_characteristic_norm(&m).map_err(|e| e.to_string())?;
        let slow = oracle::char_norm_oracle_dual(&m).map_err(|e| e.to_string())?;
        let mut diffs = Vec::new();
        if slow != fast.min_char_norm {
            diffs.push(format!(
                "N_min: search {}, oracle {}",
                fast.min_char_norm, slow
            ));
        }
        let reversed: Vec<usize> = (0..graph.rank()).rev().collect();
        let relabeled =
            lattice::min_characteristic_norm(&graph.relabel(&reversed).intersection_matrix())
                .map_err(|e| e.to_string())?;
        if relabeled.min_char_norm != fast.min_char_norm {
            diffs.push(format!(
                "N_min after relabeling: {} vs {}",
                relabeled.min_char_norm, fast.min_char_norm
            ));
        }
        Ok(Some(diffs))
    };
    let diffs = match run() {
        Ok(None) => return None,
        Ok(Some(d)) => d,
        Err(e) => vec![e],
    };
    Some(CaseResult {
        name: label,
        status: if diffs.is_empty() {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        },
        diffs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub cases: Vec<CaseResult>,
}

impl Summary {
    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(CaseStatus::Fail) == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                CaseStatus::Pass => "PASS",
                CaseStatus::Fail => "FAIL",
                CaseStatus::KnownDisputed => "KNOWN-DISPUTED",
            };
            let _ = writeln!(out, "{tag:<15} {}", c.name);
            for d in &c.diffs {
                let _ = writeln!(out, "    {d}");
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} known-disputed",
            self.count(CaseStatus::Pass),
            self.count(CaseStatus::Fail),
            self.count(CaseStatus::KnownDisputed)
        );
        out
    }
}

/// Replay every fixture, then check the lattice search against the oracle
/// on each distinct summand of the normative cases.
pub fn selftest(fixtures: &[Fixture]) -> Summary {
    let mut cases: Vec<CaseResult> = fixtures.par_iter().map(run_case).collect();

    let summands: BTreeSet<Vec<BigInt>> = fixtures
        .iter()
        .filter(|f| f.status == Status::Normative)
        .filter_map(|f| seifert::parse(&f.expr).ok())
        .flat_map(|p| {
            p.nontrivial()
                .map(|s| {
                    let mut k = s.exceptional();
                    k.sort();
                    k
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let summands: Vec<Vec<BigInt>> = summands.into_iter().collect();
    cases.extend(
        summands
            .par_iter()
            .filter_map(|m| oracle_case(m))
            .collect::<Vec<_>>(),
    );
    Summary { cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_corpus_loads() {
        let g = golden();
        assert!(g.len() > 20);
        assert!(g.iter().any(|f| f.status == Status::Disputed));
        assert_eq!(g[0].line, 1);
    }

    #[test]
    fn corrupted_line_is_named() {
        let text = "{\"expr\":\"S3\",\"status\":\"normative\"}\n\n{\"expr\": 3}\n";
        let err = load(text).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = "{\"expr\":\"S3\",\"status\":\"normative\",\"expected\":{\"mubar\":0}}";
        assert!(load(text).is_err());
    }

    #[test]
    fn disputed_mismatch_does_not_fail() {
        let text =
            "{\"expr\":\"Sigma(2,3,11)\",\"expected\":{\"mu_bar\":1},\"status\":\"disputed\"}";
        let s = selftest(&load(text).unwrap());
        assert!(s.passed());
        assert_eq!(s.count(CaseStatus::KnownDisputed), 1);
    }

    #[test]
    fn normative_mismatch_fails() {
        let text =
            "{\"expr\":\"Sigma(2,3,11)\",\"expected\":{\"delta\":5},\"status\":\"normative\"}";
        let s = selftest(&load(text).unwrap());
        assert!(!s.passed());
        assert!(s.render().contains("FAIL            line 1: Sigma(2,3,11)"));
    }
}
