//! Command-line front end: `solve`, `oracle` and `bench`.

pub mod bench;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cbpsep_core::graph::{load_matrix_market, load_metis};
use cbpsep_core::multilevel::VisitOrder;
use cbpsep_core::{
    brute_force_vsp, solve, Graph, GraphError, OracleError, SolveError, SolveParams,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{OracleReport, RunReport};

#[derive(Debug, Parser)]
#[command(
    name = "cbpsep",
    version,
    about = "Multilevel vertex separators via bilinear-program refinement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a vertex separator with the multilevel solver.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exact separator by exhaustive search (at most 16 vertices).
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.503)]
        ub_frac: f64,
        #[arg(long, default_value_t = 1)]
        lb: u64,
    },
    /// Run the solver over a manifest of benchmark graphs.
    Bench {
        manifest: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum, default_value_t = Output::Plain)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Upper bound on each side as a fraction of n.
    #[arg(long, default_value_t = 0.503)]
    pub ub_frac: f64,
    /// Lower bound on each side.
    #[arg(long, default_value_t = 1)]
    pub lb: u64,
    #[arg(long, default_value_t = 64)]
    pub coarsest_size: usize,
    #[arg(long, default_value_t = 10)]
    pub gamma_steps: usize,
    #[arg(long, default_value_t = 20)]
    pub multistarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Visit vertices in a seeded random order when matching.
    #[arg(long)]
    pub shuffle_matching: bool,
}

impl SolverArgs {
    pub fn params(&self) -> SolveParams {
        SolveParams {
            ub_fraction: self.ub_frac,
            la: self.lb,
            lb: self.lb,
            coarsest_size: self.coarsest_size,
            gamma_steps: self.gamma_steps,
            multistarts: self.multistarts,
            seed: self.seed,
            visit_order: if self.shuffle_matching {
                VisitOrder::Shuffled(self.seed)
            } else {
                VisitOrder::DegreeAscending
            },
            ..SolveParams::default()
        }
    }
}

impl Default for SolverArgs {
    fn default() -> Self {
        SolverArgs {
            ub_frac: 0.503,
            lb: 1,
            coarsest_size: 64,
            gamma_steps: 10,
            multistarts: 20,
            seed: 0,
            shuffle_matching: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(name = "mtx")]
    MatrixMarket,
    Metis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Plain,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("internal validation failure: {0}")]
    Validation(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("benchmark failed: {0}")]
    BenchFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graph(_) | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Validation(_) => 4,
            CliError::TooLarge(_) => 5,
            CliError::BenchFailed(_) => 1,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Infeasible(msg) => CliError::Infeasible(msg),
            SolveError::InvalidParams(msg) => CliError::Usage(msg),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub fn load_graph(path: &Path, format: Option<Format>) -> Result<Graph, CliError> {
    let format = match format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => Format::MatrixMarket,
            Some("graph") | Some("metis") => Format::Metis,
            _ => {
                return Err(CliError::Usage(format!(
                    "cannot infer the format of {}; pass --format",
                    path.display()
                )))
            }
        },
    };
    Ok(match format {
        Format::MatrixMarket => load_matrix_market(path)?,
        Format::Metis => load_metis(path)?,
    })
}

/// Loads, solves and re-validates; the report is only returned once it
/// checks out against the loaded graph.
pub fn run_solve(
    input: &Path,
    format: Option<Format>,
    params: &SolveParams,
) -> Result<RunReport, CliError> {
    let g = load_graph(input, format)?;
    let started = Instant::now();
    let sol = solve::<f64>(&g, params)?;
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    let report = RunReport::new(
        &input.display().to_string(),
        &g,
        params,
        sol.bounds,
        &sol.partition,
        &sol.trace,
        elapsed,
    );
    report
        .validate_against(&g)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(report)
}

pub fn run_oracle(
    input: &Path,
    format: Option<Format>,
    ub_frac: f64,
    lb: u64,
) -> Result<OracleReport, CliError> {
    let g = load_graph(input, format)?;
    let params = SolveParams {
        ub_fraction: ub_frac,
        la: lb,
        lb,
        ..SolveParams::default()
    };
    params.check()?;
    let bounds = params.bounds_for(g.total_size());
    let result = brute_force_vsp(&g, bounds).map_err(|e| match e {
        OracleError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;
    if let cbpsep_core::OracleResult::Optimal { witness, .. } = &result {
        witness
            .validate(&g, bounds)
            .map_err(|e| CliError::Validation(e.to_string()))?;
    }
    Ok(OracleReport::new(
        &input.display().to_string(),
        &g,
        bounds,
        &result,
    ))
}

/// Executes a parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            input,
            common,
            solver,
        } => {
            let report = run_solve(&input, common.format, &solver.params())?;
            match common.output {
                Output::Json => writeln!(out, "{}", report.to_json())?,
                Output::Plain => write!(out, "{}", report.to_plain())?,
            }
        }
        Command::Oracle {
            input,
            common,
            ub_frac,
            lb,
        } => {
            let report = run_oracle(&input, common.format, ub_frac, lb)?;
            match common.output {
                Output::Json => writeln!(out, "{}", report.to_json())?,
                Output::Plain => write!(out, "{}", report.to_plain())?,
            }
        }
        Command::Bench { manifest, solver } => {
            let rows = bench::run_manifest(&manifest, &solver.params())?;
            write!(out, "{}", bench::render_table(&rows))?;
            let failed: Vec<&str> = rows
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.name.as_str())
                .collect();
            if !failed.is_empty() {
                return Err(CliError::BenchFailed(failed.join(", ")));
            }
        }
    }
    Ok(())
}
