//! Output records shared by every command, and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::obstruction::{self, InvariantReport, ObstructionError, Options, Verdict};
use crate::plumbing::{self, PlumbingGraph};
use crate::seifert::{self, Orientation, SeifertError, SeifertPresentation};

/// Bumped on every change to the JSON shape of any record.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    Parse,
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Parse,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Domain,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            FailureKind::Parse => EXIT_PARSE,
            FailureKind::Domain => EXIT_DOMAIN,
        }
    }
}

impl From<SeifertError> for Failure {
    fn from(e: SeifertError) -> Self {
        if e.is_syntax() {
            Failure::parse(e.to_string())
        } else {
            Failure::domain(e.to_string())
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Seifert(inner) => inner.into(),
            other => Failure::domain(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub input: String,
    #[serde(flatten)]
    pub report: InvariantReport,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub schema_version: u32,
    pub input: String,
    pub verdicts: Vec<Verdict>,
}

impl From<&OutputRecord> for VerdictRecord {
    fn from(r: &OutputRecord) -> Self {
        VerdictRecord {
            schema_version: r.schema_version,
            input: r.input.clone(),
            verdicts: r.verdicts.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub schema_version: u32,
    pub input: String,
    pub error: Failure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEntry {
    pub summand: String,
    pub orientation: Orientation,
    pub graph: PlumbingGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub schema_version: u32,
    pub input: String,
    pub graphs: Vec<GraphEntry>,
}

pub fn evaluate(expr: &str, options: Options) -> Result<OutputRecord, Failure> {
    let presentation = seifert::parse(expr)?;
    evaluate_presentation(expr, &presentation, options)
}

pub fn evaluate_presentation(
    expr: &str,
    presentation: &SeifertPresentation,
    options: Options,
) -> Result<OutputRecord, Failure> {
    let report = obstruction::analyze(presentation, options)?;
    let verdicts = obstruction::all_verdicts(&report, options);
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: expr.to_string(),
        report,
        verdicts,
    })
}

/// Plumbing graphs of the standard orientation of every nontrivial summand.
/// A reversed summand bounds the same graph with all weights and edges
/// negated.
pub fn graphs(expr: &str) -> Result<GraphRecord, Failure> {
    let presentation = seifert::parse(expr)?;
    let graphs = presentation
        .nontrivial()
        .map(|s| {
            let inv = seifert::normalize(&s.exceptional())?;
            let graph =
                plumbing::build_plumbing(&inv).map_err(|e| Failure::domain(e.to_string()))?;
            Ok(GraphEntry {
                summand: s.to_string(),
                orientation: s.orientation,
                graph,
            })
        })
        .collect::<Result<_, Failure>>()?;
    Ok(GraphRecord {
        schema_version: SCHEMA_VERSION,
        input: expr.to_string(),
        graphs,
    })
}

pub fn graphs_dot(record: &GraphRecord) -> String {
    record
        .graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut dot = format!("// {}: plumbing of the standard orientation\n", g.summand);
            dot.push_str(&g.graph.to_dot_named(&format!("summand{i}")));
            dot
        })
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

fn outcome_word(v: &Verdict) -> &'static str {
    if v.outcome.is_obstructed() {
        "obstructed"
    } else {
        "inconclusive"
    }
}

fn criterion_word(v: &Verdict) -> String {
    serde_json::to_value(v.criterion)
        .ok()
        .and_then(|x| x.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub fn render_verdicts(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let witness: Vec<String> = v.witness.iter().map(i64::to_string).collect();
        let _ = writeln!(
            out,
            "  {:<14} {:<13} [{}]",
            criterion_word(v),
            outcome_word(v),
            witness.join(", ")
        );
    }
    out
}

pub fn render_table(record: &OutputRecord) -> String {
    let r = &record.report;
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", record.input);
    if !r.summands.is_empty() {
        let _ = writeln!(
            out,
            "  {:<24} {:<9} {:<9} {:>5} {:>6} {:>6} {:>6} {:>4} {:>6}",
            "summand", "orient", "cert", "rank", "sigma", "mu_bar", "N_min", "d", "delta"
        );
        for s in &r.summands {
            let sigma = s
                .plumbing_wu
                .as_ref()
                .map_or_else(|| "-".to_string(), |w| w.signature.to_string());
            let cert = match s.certification {
                crate::stoffregen::Certification::Certified => "certified",
                crate::stoffregen::Certification::Unknown => "unknown",
            };
            let orient = match s.orientation {
                Orientation::Positive => "standard",
                Orientation::Reversed => "reversed",
            };
            let _ = writeln!(
                out,
                "  {:<24} {:<9} {:<9} {:>5} {:>6} {:>6} {:>6} {:>4} {:>6}",
                s.summand,
                orient,
                cert,
                s.lattice.rank,
                sigma,
                s.invariants.mu_bar,
                s.lattice.min_char_norm,
                s.lattice.d,
                s.invariants.delta
            );
        }
    }
    let m = &r.manolescu;
    let _ = writeln!(
        out,
        "mu_bar = {}  rokhlin = {}  delta = {}  alpha = {}  beta = {}  gamma = {}",
        r.mu_bar_total, r.rokhlin_total, m.delta, m.alpha, m.beta, m.gamma
    );
    let _ = writeln!(
        out,
        "{} (delta = {})",
        r.lambda_sw_statement, r.implied_lambda_sw
    );
    if r.uncertified {
        let _ = writeln!(out, "UNCERTIFIED");
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "verdicts:");
    out.push_str(&render_verdicts(&record.verdicts));
    out
}
