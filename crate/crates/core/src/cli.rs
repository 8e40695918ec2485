//! Command-line surface: `compute`, `obstruct`, `plumbing`, `family` and
//! `selftest`.
//!
//! All output goes through the writers handed to [`run`], so the binary and
//! the tests exercise the same code. JSON output is one record per line.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::fixtures;
use crate::obstruction::Options;
use crate::record::{
    self, ErrorRecord, Failure, OutputRecord, VerdictRecord, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE,
    EXIT_SELFTEST, SCHEMA_VERSION,
};
use crate::seifert::{self, Orientation, SeifertError, SeifertPresentation, Summand};

#[derive(Parser, Debug)]
#[command(
    name = "seifert-psc",
    version,
    about = "Homology cobordism invariants of Seifert homology spheres and PSC obstructions"
)]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Emit JSON Lines instead of tables
    #[arg(long, global = true)]
    pub json: bool,

    /// Compute connected sums even when the summands are not certified
    /// projective or not all in standard orientation; output is marked
    /// uncertified
    #[arg(long, global = true)]
    pub assume_projective: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full invariant report and verdicts
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Also dump the plumbing graphs
        #[arg(long, value_enum)]
        plumbing: Option<GraphFormat>,
    },
    /// Verdicts only
    Obstruct {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Dump the plumbing graph of every nontrivial summand
    Plumbing {
        expr: String,
        #[arg(long, value_enum, default_value = "dot")]
        plumbing: GraphFormat,
    },
    /// Sweep a one-parameter family such as `2,3,12n-1`
    Family {
        pattern: String,
        #[arg(long, default_value_t = 1)]
        from: i64,
        #[arg(long, default_value_t = 3)]
        to: i64,
        /// Connected sum of this many copies of each instance
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Replay the golden corpus and the oracle checks
    Selftest {
        /// Corpus file to use instead of the embedded one
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Expression, e.g. `Sigma(2,3,11) # -Sigma(2,3,5)` or `3*Sigma(2,3,11)`
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    pub expr: Option<String>,
    /// File with one expression per line; `#` starts a comment line
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

/// Non-comment, non-blank lines of a batch file, in order.
pub fn batch_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

/// One entry of a family pattern: a constant or `c*n + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Entry {
    Const(BigInt),
    Linear { c: BigInt, r: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPattern {
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternError(pub String);

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid family pattern: {}", self.0)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, PatternError> {
    BigInt::from_str(s).map_err(|_| PatternError(format!("bad integer {s:?} in {whole:?}")))
}

impl FromStr for FamilyPattern {
    type Err = PatternError;

    /// Accepts `2,3,12n-1` and `Sigma(2,3,12n-1)`; `*` between the
    /// coefficient and `n` is optional.
    fn from_str(s: &str) -> Result<Self, PatternError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("Sigma(")
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(&compact);
        let entries = body
            .split(',')
            .map(|e| {
                let Some((coef, rest)) = e.split_once('n') else {
                    return parse_int(e, s).map(Entry::Const);
                };
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c = match coef {
                    "" | "+" => BigInt::from(1),
                    "-" => BigInt::from(-1),
                    _ => parse_int(coef, s)?,
                };
                let r = if rest.is_empty() {
                    BigInt::zero()
                } else {
                    parse_int(rest.strip_prefix('+').unwrap_or(rest), s)?
                };
                Ok(Entry::Linear { c, r })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() < 3 {
            return Err(PatternError(format!("need at least 3 entries in {s:?}")));
        }
        if !entries
            .iter()
            .any(|e| matches!(e, Entry::Linear { c, .. } if !c.is_zero()))
        {
            return Err(PatternError(format!("{s:?} does not depend on n")));
        }
        Ok(FamilyPattern { entries })
    }
}

impl FamilyPattern {
    pub fn instance(&self, n: i64) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|e| match e {
                Entry::Const(a) => a.clone(),
                Entry::Linear { c, r } => c * BigInt::from(n) + r,
            })
            .collect()
    }
}

fn instance_expr(mults: &[BigInt], copies: usize) -> String {
    let parts: Vec<String> = mults.iter().map(BigInt::to_string).collect();
    let term = format!("Sigma({})", parts.join(","));
    if copies == 1 {
        term
    } else {
        format!("{copies}*{term}")
    }
}

/// Outcome of one family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Member {
    Computed(i64, Box<OutputRecord>),
    Skipped(i64, String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub schema_version: u32,
    pub family: String,
    pub from: i64,
    pub to: i64,
    pub copies: usize,
    pub computed: usize,
    pub skipped: usize,
    /// `(mu_bar, delta, alpha, beta, gamma)` is the same for every
    /// computed member.
    pub constant: bool,
    pub values: Option<[i64; 5]>,
}

#[derive(Serialize)]
struct SkipRecord<'a> {
    schema_version: u32,
    n: i64,
    input: &'a str,
    skipped: &'a str,
}

#[derive(Serialize)]
struct FamilyLine<'a> {
    n: i64,
    #[serde(flatten)]
    record: &'a OutputRecord,
}

fn values(r: &OutputRecord) -> [i64; 5] {
    let m = &r.report.manolescu;
    [r.report.mu_bar_total, m.delta, m.alpha, m.beta, m.gamma]
}

/// Evaluate every member of a family. Instances whose multiplicities are
/// not pairwise coprime (or drop below 2) are skipped with a note; any
/// other failure aborts the sweep.
pub fn family(
    pattern: &FamilyPattern,
    from: i64,
    to: i64,
    copies: usize,
    options: Options,
) -> Result<Vec<Member>, Failure> {
    let copies = copies.max(1);
    (from..=to)
        .into_par_iter()
        .map(|n| {
            let mults = pattern.instance(n);
            let expr = instance_expr(&mults, copies);
            let summand = Summand::new(&mults, Orientation::Positive);
            if let Err(e) = seifert::validate(&summand) {
                return match e {
                    SeifertError::NotCoprime(..) | SeifertError::MultiplicityTooSmall(_) => {
                        Ok(Member::Skipped(n, expr, e.to_string()))
                    }
                    other => Err(other.into()),
                };
            }
            let presentation = SeifertPresentation::from_summands(vec![summand; copies]);
            record::evaluate_presentation(&expr, &presentation, options)
                .map(|r| Member::Computed(n, Box::new(r)))
        })
        .collect()
}

pub fn family_summary(
    pattern: &str,
    from: i64,
    to: i64,
    copies: usize,
    members: &[Member],
) -> FamilySummary {
    let vals: Vec<[i64; 5]> = members
        .iter()
        .filter_map(|m| match m {
            Member::Computed(_, r) => Some(values(r)),
            Member::Skipped(..) => None,
        })
        .collect();
    let constant = vals.windows(2).all(|w| w[0] == w[1]);
    FamilySummary {
        schema_version: SCHEMA_VERSION,
        family: pattern.to_string(),
        from,
        to,
        copies: copies.max(1),
        computed: vals.len(),
        skipped: members.len() - vals.len(),
        constant,
        values: if constant {
            vals.first().copied()
        } else {
            None
        },
    }
}

/// Parse the arguments and run. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_DOMAIN;
        }
    };
    // output is buffered per run so workers never touch the writers
    let (code, stdout, stderr) = pool.install(|| {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = dispatch(&cli, &mut o, &mut e);
        (code, o, e)
    });
    let _ = out.write_all(&stdout);
    let _ = err.write_all(&stderr);
    code
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let options = Options {
        assume_projective: cli.assume_projective,
    };
    let result = match &cli.command {
        Command::Compute { input, plumbing } => {
            run_records(cli, input, options, *plumbing, false, out, err)
        }
        Command::Obstruct { input } => run_records(cli, input, options, None, true, out, err),
        Command::Plumbing { expr, plumbing } => run_plumbing(expr, *plumbing, out),
        Command::Family {
            pattern,
            from,
            to,
            copies,
        } => run_family(cli, pattern, *from, *to, *copies, options, out, err),
        Command::Selftest { fixtures } => run_selftest(fixtures.as_ref(), out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit_code()
        }
    }
}

fn emit_record(
    cli: &Cli,
    rec: &OutputRecord,
    plumbing: Option<GraphFormat>,
    verdicts_only: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::domain(format!("write failed: {e}"));
    if cli.json {
        let line = if verdicts_only {
            record::to_json(&VerdictRecord::from(rec))
        } else {
            record::to_json(rec)
        };
        writeln!(out, "{line}").map_err(io)?;
    } else if verdicts_only {
        write!(
            out,
            "input: {}\nverdicts:\n{}",
            rec.input,
            record::render_verdicts(&rec.verdicts)
        )
        .map_err(io)?;
    } else {
        write!(out, "{}", record::render_table(rec)).map_err(io)?;
    }
    if let Some(fmt) = plumbing {
        let graphs = record::graphs(&rec.input)?;
        let text = match fmt {
            GraphFormat::Dot => record::graphs_dot(&graphs),
            GraphFormat::Json => record::to_json(&graphs) + "\n",
        };
        write!(out, "{text}").map_err(io)?;
    }
    Ok(())
}

fn run_records(
    cli: &Cli,
    input: &InputArgs,
    options: Options,
    plumbing: Option<GraphFormat>,
    verdicts_only: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let Some(path) = &input.batch else {
        let expr = input.expr.as_deref().unwrap_or_default();
        let rec = record::evaluate(expr, options)?;
        emit_record(cli, &rec, plumbing, verdicts_only, out)?;
        return Ok(EXIT_OK);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::domain(format!("cannot read {}: {e}", path.display())))?;
    let lines = batch_lines(&text);
    let results: Vec<Result<OutputRecord, Failure>> = lines
        .par_iter()
        .map(|l| record::evaluate(l, options))
        .collect();
    let mut code = EXIT_OK;
    for (line, res) in lines.iter().zip(results) {
        match res {
            Ok(rec) => {
                emit_record(cli, &rec, plumbing, verdicts_only, out)?;
                if !cli.json {
                    let _ = writeln!(out);
                }
            }
            Err(f) => {
                if code == EXIT_OK {
                    code = f.exit_code();
                }
                if cli.json {
                    let rec = ErrorRecord {
                        schema_version: SCHEMA_VERSION,
                        input: line.clone(),
                        error: f,
                    };
                    let _ = writeln!(out, "{}", record::to_json(&rec));
                } else {
                    let _ = writeln!(err, "error: {line}: {}", f.message);
                }
            }
        }
    }
    Ok(code)
}

fn run_plumbing(expr: &str, format: GraphFormat, out: &mut dyn Write) -> Result<i32, Failure> {
    let graphs = record::graphs(expr)?;
    let text = match format {
        GraphFormat::Dot => record::graphs_dot(&graphs),
        GraphFormat::Json => record::to_json(&graphs) + "\n",
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::domain(format!("write failed: {e}")))?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn run_family(
    cli: &Cli,
    pattern: &str,
    from: i64,
    to: i64,
    copies: usize,
    options: Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let parsed: FamilyPattern = pattern
        .parse()
        .map_err(|e: PatternError| Failure::parse(e.to_string()))?;
    if from > to {
        return Err(Failure::parse(format!("empty range {from}..={to}")));
    }
    let members = family(&parsed, from, to, copies, options)?;
    let summary = family_summary(pattern, from, to, copies, &members);
    for m in &members {
        match m {
            Member::Computed(n, rec) => {
                if cli.json {
                    let line = FamilyLine { n: *n, record: rec };
                    let _ = writeln!(out, "{}", record::to_json(&line));
                } else {
                    let [mu, d, a, b, g] = values(rec);
                    let verdicts: Vec<String> = rec
                        .verdicts
                        .iter()
                        .filter(|v| v.outcome.is_obstructed())
                        .map(|v| serde_json::to_string(&v.criterion).unwrap_or_default())
                        .collect();
                    let _ = writeln!(
                        out,
                        "n = {n:<4} {:<28} mu_bar = {mu:>3}  delta = {d:>3}  alpha = {a:>3}  beta = {b:>3}  gamma = {g:>3}  obstructed by: {}",
                        rec.input,
                        if verdicts.is_empty() { "none".to_string() } else { verdicts.join(" ").replace('"', "") }
                    );
                }
            }
            Member::Skipped(n, expr, why) => {
                if cli.json {
                    let rec = SkipRecord {
                        schema_version: SCHEMA_VERSION,
                        n: *n,
                        input: expr,
                        skipped: why,
                    };
                    let _ = writeln!(out, "{}", record::to_json(&rec));
                } else {
                    let _ = writeln!(err, "note: n = {n}: skipping {expr}: {why}");
                }
            }
        }
    }
    if cli.json {
        let _ = writeln!(out, "{}", record::to_json(&summary));
    } else {
        let _ = writeln!(
            out,
            "constant across computed members: {}",
            if summary.constant { "yes" } else { "no" }
        );
    }
    Ok(EXIT_OK)
}

fn run_selftest(
    path: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let loaded = match path {
        None => fixtures::load(fixtures::GOLDEN),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::domain(format!("cannot read {}: {e}", p.display())))?;
            fixtures::load(&text)
        }
    };
    let corpus = match loaded {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "FAIL {e}");
            return Ok(EXIT_SELFTEST);
        }
    };
    let summary = fixtures::selftest(&corpus);
    let _ = write!(out, "{}", summary.render());
    Ok(if summary.passed() {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    })
}
