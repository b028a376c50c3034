//! The `su3b` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 non-resonant problem
//! rejected by `--require-periodic`, 3 a graded ledger claim failed.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::brachistochrone::{BrachistochroneProblem, Convention};
use crate::classify::char_poly_invariants;
use crate::degeneracy::{
    angular_momentum, dft_swap_gate, l_squared, qutrit_dft, rotation, solution_matrix, RotationFamily,
    SolutionMatrixKind,
};
use crate::floquet::{u1f_closed, u2f_closed, y_isometry};
use crate::ledger::{run_all, LedgerConfig};
use crate::linalg::{c64, ComplexMatrix, HermitianMatrix, C64};
use crate::propagators::{resonance, ResonanceRatio};
use crate::su4::{embedded_hamiltonian, su4_constraint, su4_ode_check, Su4Problem};
use crate::trajectory::{plot_script, sample_trajectory, write_csv, PropagationMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_RESONANT: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "su3b", version, about = "Time-optimal SU(3) control: propagators, gates and the claim ledger")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolve a problem and print its derived constants (Delta, T0, m/n).
    Solve(SolveArgs),
    /// Sample U(t) on a uniform grid and write it as CSV.
    Propagate(PropagateArgs),
    /// Run the claim ledger; exit 3 if any graded claim fails.
    Verify(VerifyArgs),
    /// Characteristic-polynomial class of a 3x3 Hermitian matrix.
    Classify(ClassifyArgs),
    /// Print a catalog matrix as JSON.
    Gates(GatesArgs),
    /// Embedded four-level problem: matrices and coupling claims.
    Su4(Su4Args),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Field frequency k (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub k: f64,
    /// Phase theta (radians unless --degrees).
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub theta: f64,
    /// Field amplitude R, or "auto" for the resonant value sqrt(3) k.
    #[arg(long = "R", default_value = "auto", allow_negative_numbers = true)]
    pub r: String,
    /// Constraint corner convention: self-consistent or printed.
    #[arg(long, default_value = "self-consistent")]
    pub convention: String,
    /// Read the problem from a JSON file instead of the flags above.
    #[arg(long, value_name = "JSON", conflicts_with_all = ["k", "theta", "r", "convention", "degrees"])]
    pub problem: Option<PathBuf>,
    /// Interpret --theta in degrees.
    #[arg(long)]
    pub degrees: bool,
}

impl ProblemArgs {
    pub fn resolve(&self) -> anyhow::Result<BrachistochroneProblem> {
        if let Some(path) = &self.problem {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return serde_json::from_str(&text).with_context(|| format!("parsing problem JSON {}", path.display()));
        }
        let r = match self.r.trim() {
            "auto" => None,
            v => Some(v.parse::<f64>().map_err(|_| anyhow!("--R must be a number or 'auto', got '{v}'"))?),
        };
        let convention: Convention = self.convention.parse()?;
        let theta = if self.degrees { self.theta.to_radians() } else { self.theta };
        Ok(BrachistochroneProblem::new(self.k, theta, r, convention)?)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Reject problems whose Delta/k is not rational (exit code 2).
    #[arg(long)]
    pub require_periodic: bool,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// closed, oracle, frame or floquet.
    #[arg(long, default_value = "closed")]
    pub method: String,
    /// Number of sample times, endpoints included (>= 2).
    #[arg(long, default_value_t = 65)]
    pub samples: usize,
    /// End time; defaults to T0 (or 2pi/k when not resonant).
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// Midpoint steps for --method oracle over the whole interval.
    #[arg(long, default_value_t = 1 << 16)]
    pub oracle_steps: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (requires --out).
    #[arg(long, requires = "out")]
    pub emit_plot: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Claim-id prefixes to run, comma separated (e.g. C03,C10).
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Ledger configuration JSON; flags below override it.
    #[arg(long, value_name = "JSON")]
    pub config: Option<PathBuf>,
    /// Sampling seed.
    #[arg(long, env = "SU3_SEED")]
    pub seed: Option<u64>,
    /// Oracle comparison times per period.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Midpoint steps per period for the oracle.
    #[arg(long)]
    pub oracle_steps: Option<usize>,
    /// Simpson panels for the conservation split.
    #[arg(long)]
    pub quadrature_steps: Option<usize>,
    /// Multiply every tolerance by this factor.
    #[arg(long)]
    pub tolerance_scale: Option<f64>,
    /// Record the wall-clock time in the report.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Matrix JSON: {"dim":3,"entries":[[re,im],...]} or a 3x3 array whose
    /// entries are numbers or [re, im] pairs.
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct GatesArgs {
    /// dft, swap, lx, ly, lz, l2, xq, xj, xd, rotation, y, u1f, u2f.
    #[arg(long)]
    pub which: String,
    /// Time argument for solution matrices and Floquet factors.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    /// Rotation angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub sigma: f64,
    /// Phase theta.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Rotation family for --which rotation (q1..q3, j1..j3, d1..d3).
    #[arg(long, default_value = "d1")]
    pub family: String,
    /// Field frequency for the Floquet factors.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
}

#[derive(Debug, Args)]
pub struct Su4Args {
    /// Use the built-in generic parameter set (default when --file is absent).
    #[arg(long)]
    pub demo: bool,
    /// Su4Problem JSON.
    #[arg(long, conflicts_with = "demo")]
    pub file: Option<PathBuf>,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
}

/// Failures that map to a specific exit code.
#[derive(Debug)]
enum Outcome {
    Code(i32),
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let Outcome::Code(c) = self;
        write!(f, "exit {c}")
    }
}

impl std::error::Error for Outcome {}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if let Some(Outcome::Code(c)) = e.downcast_ref::<Outcome>() {
                return *c;
            }
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    match cmd {
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Propagate(a) => cmd_propagate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Classify(a) => cmd_classify(&a, out),
        Command::Gates(a) => cmd_gates(&a, out),
        Command::Su4(a) => cmd_su4(&a, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, value: &impl Serialize) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub problem: BrachistochroneProblem,
    pub delta: f64,
    pub resonant: bool,
    pub resonance: Option<ResonanceRatio>,
    /// `T₀`, or `null` when `Δ/k` is not rational.
    pub period: Option<f64>,
}

pub fn solve_report(p: &BrachistochroneProblem) -> SolveReport {
    let ratio = resonance(p).ok();
    SolveReport {
        problem: *p,
        delta: p.delta(),
        resonant: ratio.is_some(),
        resonance: ratio,
        period: ratio.map(|r| std::f64::consts::TAU * r.n as f64 / p.k()),
    }
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let p = a.problem.resolve()?;
    let report = solve_report(&p);
    if a.require_periodic && !report.resonant {
        writeln!(err, "error: Delta/k = {} is not a rational ratio; no period exists", p.delta() / p.k())?;
        return Err(Outcome::Code(EXIT_NOT_RESONANT).into());
    }
    emit(out, a.out.as_deref(), &report)
}

fn cmd_propagate(a: &PropagateArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let p = a.problem.resolve()?;
    let method: PropagationMethod = a.method.parse()?;
    let t_end = match a.t_end {
        Some(t) => t,
        None => solve_report(&p).period.unwrap_or(std::f64::consts::TAU / p.k()),
    };
    let rows = sample_trajectory(&p, method, t_end, a.samples, a.oracle_steps)?;
    match &a.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(io::BufWriter::new(file), &rows)?;
            if a.emit_plot {
                let script = path.with_extension("gp");
                let csv_name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                fs::write(&script, plot_script(&csv_name, &format!("{method} propagator populations")))
                    .with_context(|| format!("writing {}", script.display()))?;
            }
        }
        None => write_csv(&mut *out, &rows)?,
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let p = a.problem.resolve()?;
    let mut cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<LedgerConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => LedgerConfig::default(),
    };
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(v) = a.samples {
        cfg.samples = v;
    }
    if let Some(v) = a.oracle_steps {
        cfg.oracle_steps = v;
    }
    if let Some(v) = a.quadrature_steps {
        cfg.quadrature_steps = v;
    }
    if let Some(v) = a.tolerance_scale {
        cfg.tolerance_scale = v;
    }
    if !a.claims.is_empty() {
        cfg.claims = a.claims.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    }
    cfg.timestamp |= a.timestamp;
    let report = run_all(&p, &cfg)?;
    if a.json {
        emit(out, None, &report)?;
    } else {
        write!(out, "{}", report.render_table())?;
    }
    if let Some(path) = &a.out {
        emit(out, Some(path), &report)?;
    }
    if report.claims.is_empty() {
        writeln!(err, "warning: no claim matched {:?}", cfg.claims)?;
    }
    if report.has_failures() {
        return Err(Outcome::Code(EXIT_VERIFY_FAILED).into());
    }
    Ok(())
}

/// Accepts the library's matrix JSON or a square array of rows whose entries
/// are real numbers or `[re, im]` pairs.
pub fn parse_matrix_json(text: &str) -> anyhow::Result<ComplexMatrix> {
    let value: Value = serde_json::from_str(text).context("malformed matrix JSON")?;
    if value.is_object() {
        return serde_json::from_value(value).context("matrix object must have 'dim' and 'entries'");
    }
    let rows = value.as_array().ok_or_else(|| anyhow!("matrix JSON must be an object or an array of rows"))?;
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| anyhow!("row {} is not an array", i + 1))?;
        if row.len() != n {
            bail!("row {} has {} entries, expected {n}", i + 1, row.len());
        }
        for (j, e) in row.iter().enumerate() {
            entries.push(entry(e).ok_or_else(|| anyhow!("entry ({}, {}) is not a number or [re, im] pair", i + 1, j + 1))?);
        }
    }
    Ok(ComplexMatrix::from_row_major(n, &entries)?)
}

fn entry(v: &Value) -> Option<C64> {
    match v {
        Value::Number(x) => Some(c64(x.as_f64()?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Some(c64(pair[0].as_f64()?, pair[1].as_f64()?)),
        _ => None,
    }
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let text = fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let m = parse_matrix_json(&text).with_context(|| format!("in {}", a.file.display()))?;
    let h = HermitianMatrix::new(m)?;
    emit(out, None, &char_poly_invariants(&h)?)
}

fn cmd_gates(a: &GatesArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let which = a.which.to_ascii_lowercase();
    let m: ComplexMatrix = match which.as_str() {
        "dft" => qutrit_dft().into_inner(),
        "swap" => dft_swap_gate().into_inner(),
        "lx" => angular_momentum().0.into_inner(),
        "ly" => angular_momentum().1.into_inner(),
        "lz" => angular_momentum().2.into_inner(),
        "l2" => l_squared().into_inner(),
        "xq" => solution_matrix(SolutionMatrixKind::Q, a.t, a.theta),
        "xj" => solution_matrix(SolutionMatrixKind::J, a.t, a.theta),
        "xd" => solution_matrix(SolutionMatrixKind::D, a.t, a.theta),
        "rotation" | "rotations" => rotation(a.family.parse::<RotationFamily>()?, a.sigma, a.theta),
        "y" => y_isometry(a.theta).into_inner(),
        "u1f" | "u2f" => {
            let p = BrachistochroneProblem::resonant(a.k, a.theta)?;
            if which == "u1f" {
                u1f_closed(&p, a.t)
            } else {
                u2f_closed(&p, a.t).into_inner()
            }
        }
        other => bail!("unknown gate '{other}'"),
    };
    let report = json!({
        "name": which,
        "matrix": m,
        "unitarity_residual": m.unitarity_residual(),
        "hermiticity_residual": m.hermiticity_residual(),
    });
    emit(out, None, &report)
}

fn cmd_su4(a: &Su4Args, out: &mut dyn Write) -> anyhow::Result<()> {
    let p = match &a.file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<Su4Problem>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => Su4Problem::demo(),
    };
    let claims = su4_ode_check(&p, a.step)?;
    let report = json!({
        "problem": p,
        "hamiltonian": embedded_hamiltonian(&p),
        "constraint": su4_constraint(&p),
        "claims": claims,
    });
    emit(out, None, &report)
}

/// Reads a trajectory CSV written by `propagate`.
pub fn read_trajectory(path: &Path) -> anyhow::Result<Vec<crate::trajectory::TrajectoryRow>> {
    let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(crate::trajectory::read_csv(BufReader::new(f))?)
}
