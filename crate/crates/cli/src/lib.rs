//! Batch front end for the `qp1qec` solver: reads JSON problem files and
//! writes JSON reports to standard output.

pub mod json;
pub mod problem_file;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use nalgebra::DVector;
use serde_json::{json, Value};

use qp1qec::generate::{planted_problem, GeneratorConfig};
use qp1qec::splines::{build_problem, check_t_surjective};
use qp1qec::{existence_for_all_data, solve, verify_solution, DegenerateOutcome, SolveStatus};

use problem_file::{parse_vector, ProblemFile};

/// Environment variable overriding the residual tolerance.
pub const TOLERANCE_ENV: &str = "QP1QEC_TOLERANCE";

pub mod exit {
    pub const OK: i32 = 0;
    pub const UNBOUNDED_BELOW: i32 = 2;
    pub const INFIMUM_NOT_ATTAINED: i32 = 3;
    pub const VERIFY_FAILED: i32 = 3;
    pub const DEGENERATE: i32 = 4;
    pub const NOT_SURJECTIVE: i32 = 5;
    pub const MALFORMED: i32 = 64;
    pub const DIMENSION: i32 = 65;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => exit::MALFORMED,
            CliError::Dimension(_) => exit::DIMENSION,
        }
    }
}

impl From<qp1qec::Error> for CliError {
    fn from(e: qp1qec::Error) -> Self {
        match e {
            qp1qec::Error::DimensionMismatch(msg) => CliError::Dimension(msg),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qp1qec", version, about = "Indefinite least squares with one quadratic equality constraint")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// PSD interval, κ, subspace dimensions and the solvable-for-all-data verdict.
    Analyze { file: PathBuf },
    /// Solve and report the outcome.
    Solve { file: PathBuf },
    /// Check optimality of a candidate point.
    Verify {
        file: PathBuf,
        /// JSON array (or {"x": [...]}) holding the candidate.
        #[arg(long)]
        x: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Emit a random problem with a nonempty PSD interval.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        planted_interval: Option<Vec<f64>>,
    },
    /// Build a problem from the "splines" object and solve it.
    Splines { file: PathBuf },
}

/// Runs a parsed command; the report goes to `out`, diagnostics to `err`.
/// `tolerance_override` is the raw value of [`TOLERANCE_ENV`].
pub fn run(cli: &Cli, tolerance_override: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, tolerance_override) {
        Ok((report, code)) => {
            let _ = writeln!(out, "{}", json::to_string(&report));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "qp1qec: {e}");
            e.exit_code()
        }
    }
}

fn parse_override(raw: Option<&str>) -> Result<Option<f64>, CliError> {
    raw.map(|s| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Malformed(format!("{TOLERANCE_ENV}={s:?} is not a number")))
    })
    .transpose()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn load(path: &Path, override_residual: Option<f64>) -> Result<(ProblemFile, qp1qec::ToleranceConfig), CliError> {
    let file = ProblemFile::parse(&read(path)?)?;
    let tol = file.tolerances(override_residual)?;
    Ok((file, tol))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn dispatch(cli: &Cli, tolerance_override: Option<&str>) -> Result<(Value, i32), CliError> {
    let residual = parse_override(tolerance_override)?;
    match &cli.command {
        Command::Analyze { file } => {
            let (file, tol) = load(file, residual)?;
            let problem = file.to_problem(tol)?;
            let start = Instant::now();
            let existence = existence_for_all_data(&problem)?;
            let mut r = report::analysis(&existence);
            r["timings_ms"] = json!({ "analyze": elapsed_ms(start) });
            Ok((r, exit::OK))
        }
        Command::Solve { file } => {
            let (file, tol) = load(file, residual)?;
            let problem = file.to_problem(tol)?;
            solve_report(&problem)
        }
        Command::Verify { file, x, lambda } => {
            let (file, tol) = load(file, residual)?;
            let problem = file.to_problem(tol)?;
            let x = parse_vector(&read(x)?)?;
            if x.len() != problem.dim() {
                return Err(CliError::Dimension(format!("x has length {}, expected {}", x.len(), problem.dim())));
            }
            let start = Instant::now();
            let v = verify_solution(&problem, &DVector::from_vec(x), *lambda);
            let mut r = report::verification(&v, *lambda);
            r["timings_ms"] = json!({ "verify": elapsed_ms(start) });
            let code = if v.pass { exit::OK } else { exit::VERIFY_FAILED };
            Ok((r, code))
        }
        Command::Generate { n, seed, planted_interval } => {
            let interval = planted_interval.as_ref().map(|v| (v[0], v[1]));
            let config = GeneratorConfig { interval, ..GeneratorConfig::new(*n) };
            let mut problem = planted_problem(&config, *seed)?;
            if let Some(r) = residual {
                problem.tol = problem.tol.with_residual_tol(r);
            }
            let file = ProblemFile::from_problem(&problem);
            let value = serde_json::to_value(&file).map_err(|e| CliError::Malformed(e.to_string()))?;
            Ok((value, exit::OK))
        }
        Command::Splines { file } => {
            let (file, tol) = load(file, residual)?;
            let msp = file.to_splines(tol)?;
            let surjectivity = check_t_surjective(&msp.u, &msp.w, &tol);
            let problem = build_problem(&msp)?;
            let (mut r, code) = solve_report(&problem)?;
            r["surjectivity"] = json!({
                "surjective": surjectivity.surjective,
                "dim_null_U": surjectivity.dim_null_u,
                "dim_null_W": surjectivity.dim_null_w,
                "dim_intersection": surjectivity.dim_intersection,
                "n": surjectivity.n,
            });
            let code = if surjectivity.surjective { code } else { exit::NOT_SURJECTIVE };
            Ok((r, code))
        }
    }
}

fn solve_report(problem: &qp1qec::Problem) -> Result<(Value, i32), CliError> {
    let start = Instant::now();
    let outcome = solve(problem)?;
    let solve_ms = elapsed_ms(start);
    let existence = existence_for_all_data(problem)?;
    let mut r = report::outcome(problem, &outcome);
    r["existence_for_all_data"] = report::existence(&existence);
    r["timings_ms"] = json!({ "solve": solve_ms });
    let code = match &outcome.status {
        SolveStatus::Solved(_) | SolveStatus::Degenerate(DegenerateOutcome::Solved(_)) => exit::OK,
        SolveStatus::UnboundedBelow { .. } => exit::UNBOUNDED_BELOW,
        SolveStatus::InfimumNotAttained { .. } => exit::INFIMUM_NOT_ATTAINED,
        SolveStatus::Degenerate(DegenerateOutcome::NoVerifiedSolution) => exit::DEGENERATE,
    };
    Ok((r, code))
}
