use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::Args;
use num_rational::Ratio;
use pkp_core::approx::{run_a_delta, select_delta, ApproxCase, ApproxKind};
use pkp_core::generator::parse_ratio;
use pkp_core::{dp, exact, oracle, Instance, Solution};

use crate::{read_instance, Algorithm, CaseArgs, CaseName, ParamArgs};

#[derive(Args, Debug)]
pub struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Exact)]
    algorithm: Algorithm,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    case: CaseArgs,
    /// Also print the selected items (input-order indices) on a second line.
    #[arg(long)]
    selected: bool,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    file: PathBuf,
    #[command(flatten)]
    case: CaseArgs,
    /// Solve exactly as well and print the achieved ratio.
    #[arg(long)]
    compare: bool,
}

pub fn approx_case(args: &CaseArgs) -> anyhow::Result<ApproxCase> {
    let epsilon = parse_ratio(&args.epsilon)?;
    let need_bound = || {
        args.bound
            .context("this case needs --bound C")
    };
    let kind = match args.case {
        CaseName::ProfitDominates => ApproxKind::ProfitDominatesPenalty,
        CaseName::PenaltyBounded => ApproxKind::PenaltyBoundedByC(need_bound()?),
        CaseName::GapBounded => ApproxKind::GapBoundedByC(need_bound()?),
        CaseName::ProfitFloor => {
            let rho = args.rho.as_deref().context("this case needs --rho")?;
            ApproxKind::ProfitFloor(parse_ratio(rho)?)
        }
    };
    Ok(ApproxCase::new(kind, epsilon))
}

fn approximate(inst: &Instance, args: &CaseArgs) -> anyhow::Result<(Solution, Ratio<i64>)> {
    let case = approx_case(args)?;
    let delta = select_delta(&case, inst)?;
    Ok((run_a_delta(inst, delta), delta))
}

/// Leading index and selection in input order.
fn input_order(inst: &Instance, sol: &Solution) -> (String, Vec<usize>) {
    let lead = sol
        .leading_index
        .map_or("-".to_string(), |j| inst.item(j).original_index.to_string());
    (lead, sol.original_indices(inst))
}

pub fn run(args: &SolveArgs) -> anyhow::Result<ExitCode> {
    let inst = read_instance(&args.file)?;
    let start = Instant::now();
    let (sol, states_max) = match args.algorithm {
        Algorithm::Exact => {
            let report = exact::solve_with_stats(&inst, &args.params.to_params());
            (report.solution, report.stats.states_max)
        }
        Algorithm::Dp1 => (dp::solve_dp1(&inst)?, 0),
        Algorithm::Brute => (oracle::brute_force(&inst)?, 0),
        Algorithm::Approx => (approximate(&inst, &args.case)?.0, 0),
    };
    let elapsed = start.elapsed().as_millis();
    let (lead, selected) = input_order(&inst, &sol);
    let status = match (args.algorithm, sol.certified_optimal) {
        (Algorithm::Approx, _) => "approximate",
        (_, true) => "certified",
        (_, false) => "timeout",
    };
    println!("{} {lead} {status} {elapsed} {states_max}", sol.value);
    if args.selected {
        let items: Vec<String> = selected.iter().map(usize::to_string).collect();
        println!("{}", items.join(" "));
    }
    if args.algorithm != Algorithm::Approx && !sol.certified_optimal {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn run_approx(args: &ApproxArgs) -> anyhow::Result<ExitCode> {
    let inst = read_instance(&args.file)?;
    let start = Instant::now();
    let (sol, delta) = approximate(&inst, &args.case)?;
    let elapsed = start.elapsed().as_millis();
    let (lead, _) = input_order(&inst, &sol);
    println!("{} {lead} delta={delta} {elapsed}", sol.value);
    if args.compare {
        let opt = exact::solve(&inst, &exact::SolverParams::default());
        let eps = parse_ratio(&args.case.epsilon)?;
        // value >= (1 - eps) * opt, compared exactly
        let ok = Ratio::from_integer(sol.value) >= (Ratio::from_integer(1) - eps) * opt.value;
        println!("exact={} within_bound={ok}", opt.value);
        if !ok {
            bail!("approximation guarantee violated");
        }
    }
    Ok(ExitCode::SUCCESS)
}
