//! `pkp`: generate, solve and benchmark penalized knapsack instances.

mod bench;
mod generate;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "pkp", version, about = "Penalized knapsack solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write generated instances in the text format.
    Generate(generate::GenerateArgs),
    /// Solve one instance file and print `value leading_index certified time_ms states_max`.
    Solve(solve::SolveArgs),
    /// Solve every instance in a directory and print a CSV summary.
    Bench(bench::BenchArgs),
    /// Run the approximation scheme for one of its special cases.
    Approx(solve::ApproxArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Exact,
    Dp1,
    Brute,
    Approx,
}

/// Tuning of the exact solver.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Dominance look-back; 0 compares against every lighter state.
    #[arg(long, default_value_t = 15)]
    alpha: usize,
    /// Largest n'·c handed to the single-table program.
    #[arg(long, default_value_t = 5_000_000_000)]
    t1: u128,
    /// Smallest penalty window for the single-table program (default n/10).
    #[arg(long)]
    t2: Option<usize>,
    /// State count that enables the penalty-bound test.
    #[arg(long, default_value_t = 3_000_000)]
    t3: usize,
    /// Per-instance time limit in seconds; 0 disables it.
    #[arg(long, default_value_t = 100.0)]
    time_limit: f64,
}

impl ParamArgs {
    pub fn to_params(&self) -> pkp_core::exact::SolverParams {
        pkp_core::exact::SolverParams {
            alpha: if self.alpha == 0 { usize::MAX } else { self.alpha },
            t1: self.t1,
            t2: self.t2,
            t3: self.t3,
            time_limit: (self.time_limit > 0.0)
                .then(|| std::time::Duration::from_secs_f64(self.time_limit)),
            ..Default::default()
        }
    }
}

/// Approximation case selection.
#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    #[arg(long, default_value = "0.1")]
    epsilon: String,
    #[arg(long, value_enum, default_value_t = CaseName::ProfitDominates)]
    case: CaseName,
    /// The constant C of the bounded cases.
    #[arg(long = "bound")]
    bound: Option<i64>,
    /// The ratio of the profit-floor case, e.g. `3/4`.
    #[arg(long)]
    rho: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    ProfitDominates,
    PenaltyBounded,
    GapBounded,
    ProfitFloor,
}

pub fn read_instance(path: &PathBuf) -> anyhow::Result<pkp_core::Instance> {
    use anyhow::Context;
    let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let inst = pkp_core::Instance::read_text(std::io::BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(inst.with_label(label))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate::run(&args).map(|_| ExitCode::SUCCESS),
        Command::Solve(args) => solve::run(&args),
        Command::Bench(args) => bench::run(&args).map(|_| ExitCode::SUCCESS),
        Command::Approx(args) => solve::run_approx(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
