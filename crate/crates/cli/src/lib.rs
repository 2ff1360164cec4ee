//! Subcommand dispatch for the `plumb` binary.
//!
//! [`run`] is pure with respect to its inputs: it returns the text destined
//! for standard output together with the exit status, so the binary only
//! handles I/O.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumb_core::families::{self, handlebody, mpm_boundary_detailed};
use plumb_core::grid::{self, Grid};
use plumb_core::lattice::{enumerate_norm, has_minus_one_class_with, vectors_of_norm_with};
use plumb_core::lens::chain_boundary_detailed;
use plumb_core::report::{CheckStatus, VerificationReport};
use plumb_core::{invariants, PlumbingGraph};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] plumb_core::GraphError),
    #[error(transparent)]
    Family(#[from] families::FamilyError),
    #[error(transparent)]
    Kirby(#[from] plumb_core::kirby::KirbyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "plumb", version, about = "Exact invariants of plumbings and rational blow-ups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (default: json for `family`, table otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Fan grid points out over a thread pool. Output is identical either way.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection-form invariants of a plumbing graph.
    Invariants(GraphInput),
    /// Boundary lens space of a linear plumbing.
    Boundary(GraphInput),
    /// Build one of the parametric families.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Lattice searches on the intersection form.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Replay handle moves at the level of linking matrices.
    #[command(subcommand)]
    Replay(ReplayCommand),
    /// Run theorem checks over a parameter grid.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph JSON file; standard input when omitted.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Point {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// The chain C_p.
    Cp {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// The plumbing obtained by rationally blowing up B_p in M(p, m).
    Blowup(Point),
    /// The 2-handlebody M(p, m).
    Mpm(Point),
}

#[derive(Debug, Args)]
pub struct LatticeInput {
    #[arg(long, allow_negative_numbers = true, requires = "m", conflicts_with = "file")]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    pub m: Option<i64>,
    /// Graph JSON file; standard input when neither this nor --p/--m is given.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Search for a class of square -1.
    MinusOne(LatticeInput),
    /// List every vector of a given square in a definite form.
    Roots {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        norm: i64,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Single point; overrides the grid bounds.
    #[arg(long, allow_negative_numbers = true, requires = "m")]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    pub m: Option<i64>,
    #[arg(long, default_value_t = 12, allow_negative_numbers = true)]
    pub p_max: i64,
    #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
    pub m_min: i64,
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    pub m_max: i64,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid, CliError> {
        let g = match (self.p, self.m) {
            (Some(p), Some(m)) => Grid::single(p, m),
            _ => Grid::new(self.p_max, self.m_min, self.m_max),
        };
        g.map_err(|e| CliError::Usage(format!("invalid grid: {e}")))
    }
}

#[derive(Debug, Subcommand)]
pub enum ReplayCommand {
    /// Slide and cancel down to a single (p^2 m - p - 1)-framed 2-handle.
    #[command(name = "thm1-2")]
    Thm12 {
        #[command(flatten)]
        grid: GridArgs,
        /// Emit the move-by-move trace instead of the report.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Determinant, boundary and signature checks for the blown-up plumbing.
    Blowup(GridArgs),
    /// No classes of square -1 in the blown-up plumbing.
    #[command(name = "cor1-5")]
    Cor15(GridArgs),
}

/// What the binary writes to standard output, and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

fn read_source(file: &Option<PathBuf>, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<String, CliError> {
    match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => stdin().map_err(|source| CliError::Io { path: "<stdin>".into(), source }),
    }
}

fn lattice_graph(
    input: &LatticeInput,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<PlumbingGraph, CliError> {
    match (input.p, input.m) {
        (Some(p), Some(m)) => Ok(families::blowup_chain(p, m)?),
        _ => Ok(PlumbingGraph::from_json(&read_source(&input.file, stdin)?)?),
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn report_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>4} {:>4}  {:<18} {:<8} details", "p", "m", "check", "status").unwrap();
    for r in reports {
        for c in &r.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skipped",
            };
            writeln!(out, "{:>4} {:>4}  {:<18} {:<8} {}", r.p, r.m, c.name, status, c.details).unwrap();
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} points, {} failed", reports.len(), failed).unwrap();
    out
}

/// 0 when every report passed, 1 otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn reports_output(reports: &[VerificationReport], format: Format) -> Output {
    let stdout = match format {
        Format::Json => json(&reports),
        Format::Table => report_table(reports),
    };
    Output { stdout, code: exit_code(reports) }
}

/// Runs one command. `stdin` is only consulted when a command needs graph
/// input and no `--file` was given.
pub fn run(
    config: &RunConfig,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<Output, CliError> {
    let table = |default: Format| config.format.unwrap_or(default) == Format::Table;
    match &config.command {
        Command::Invariants(input) => {
            let g = PlumbingGraph::from_json(&read_source(&input.file, stdin)?)?;
            let r = invariants(&g.intersection_matrix());
            if !table(Format::Table) {
                return Ok(Output::ok(json(&r)));
            }
            let mut out = String::new();
            for (k, v) in [
                ("b2", r.b2.to_string()),
                ("determinant", r.determinant.to_string()),
                ("signature", r.signature.to_string()),
                ("b2_plus", r.b2_plus.to_string()),
                ("b2_minus", r.b2_minus.to_string()),
                ("b2_zero", r.b2_zero.to_string()),
                ("euler", r.euler.to_string()),
                ("definiteness", r.definiteness.to_string()),
                ("parity", r.parity.to_string()),
            ] {
                writeln!(out, "{k:<13} {v}").unwrap();
            }
            Ok(Output::ok(out))
        }
        Command::Boundary(input) => {
            let g = PlumbingGraph::from_json(&read_source(&input.file, stdin)?)?;
            let weights = g
                .chain_weights()
                .ok_or_else(|| CliError::Usage("boundary needs a linear chain (a single path)".into()))?;
            let b = chain_boundary_detailed(&weights);
            if table(Format::Table) {
                return Ok(Output::ok(format!("{}\n", b.manifold)));
            }
            Ok(Output::ok(json(&serde_json::json!({
                "boundary": b.manifold,
                "raw": [b.raw.0.to_string(), b.raw.1.to_string()],
                "flipped": b.flipped,
            }))))
        }
        Command::Family(cmd) => {
            let graph = match cmd {
                FamilyCommand::Cp { p } => families::cp_chain(*p)?,
                FamilyCommand::Blowup(pt) => families::blowup_chain(pt.p, pt.m)?,
                FamilyCommand::Mpm(pt) => {
                    let h = handlebody(pt.p, pt.m)?;
                    let b = mpm_boundary_detailed(pt.p, pt.m)?;
                    if table(Format::Json) {
                        return Ok(Output::ok(format!(
                            "M({},{}): 2-handle on {} with framing {}, boundary {}\n",
                            pt.p, pt.m, h.knot, h.framing, b.manifold
                        )));
                    }
                    return Ok(Output::ok(json(&serde_json::json!({
                        "p": pt.p,
                        "m": pt.m,
                        "knot": h.knot,
                        "unknot": h.knot.is_unknot(),
                        "framing": h.framing,
                        "boundary": b.manifold,
                    }))));
                }
            };
            if table(Format::Json) {
                let w: Vec<String> = graph.weights().iter().map(ToString::to_string).collect();
                return Ok(Output::ok(format!("chain {}\n", w.join(" "))));
            }
            Ok(Output::ok(format!("{}\n", graph.to_json())))
        }
        Command::Lattice(LatticeCommand::MinusOne(input)) => {
            let g = lattice_graph(input, stdin)?;
            let r = has_minus_one_class_with(&g, config.parallel);
            if !table(Format::Table) {
                return Ok(Output::ok(json(&r)));
            }
            let line = match &r {
                plumb_core::NormSearchResult::Witness { vector } => format!("Witness {vector:?}"),
                plumb_core::NormSearchResult::Inconclusive { reason } => format!("Inconclusive ({reason})"),
                other => other.label().to_string(),
            };
            Ok(Output::ok(format!("{line}\n")))
        }
        Command::Lattice(LatticeCommand::Roots { input, norm }) => {
            let g = lattice_graph(input, stdin)?;
            let q = g.intersection_matrix();
            let Some(found) = enumerate_norm(&q, *norm, config.parallel) else {
                let r = vectors_of_norm_with(&q, *norm, config.parallel);
                if table(Format::Table) {
                    return Ok(Output::ok(format!("{}\n", r.label())));
                }
                return Ok(Output::ok(json(&r)));
            };
            if table(Format::Table) {
                let mut out = format!("{} vectors of square {}\n", found.vectors.len(), norm);
                for v in &found.vectors {
                    writeln!(out, "{v:?}").unwrap();
                }
                return Ok(Output::ok(out));
            }
            Ok(Output::ok(json(&serde_json::json!({
                "norm": norm,
                "count": found.vectors.len(),
                "vectors": found.vectors,
                "certificate": found.certificate,
            }))))
        }
        Command::Replay(ReplayCommand::Thm12 { grid: args, trace }) => {
            let outcomes = grid::replay_grid(&args.grid()?, config.parallel)?;
            if *trace {
                let reports: Vec<VerificationReport> = outcomes.iter().map(|o| o.report.clone()).collect();
                let code = exit_code(&reports);
                let traces: Vec<_> = outcomes
                    .iter()
                    .map(|o| serde_json::json!({"p": o.report.p, "m": o.report.m, "trace": o.trace}))
                    .collect();
                return Ok(Output { stdout: json(&traces), code });
            }
            let reports: Vec<VerificationReport> = outcomes.into_iter().map(|o| o.report).collect();
            Ok(reports_output(&reports, config.format.unwrap_or(Format::Table)))
        }
        Command::Verify(VerifyCommand::Blowup(args)) => {
            let reports = grid::verify_blowup_grid(&args.grid()?, config.parallel)?;
            Ok(reports_output(&reports, config.format.unwrap_or(Format::Table)))
        }
        Command::Verify(VerifyCommand::Cor15(args)) => {
            let reports = grid::verify_minus_one_grid(&args.grid()?, config.parallel)?;
            Ok(reports_output(&reports, config.format.unwrap_or(Format::Table)))
        }
    }
}
