//! The two-step exact algorithm.
//!
//! Step 1 ([`step1`]) solves the penalty-free knapsack, uses it to discard
//! items that cannot lead an improving solution, and narrows the leading
//! item to the window `[l, r]` whose `PKP_j^+` relaxation beats the
//! incumbent. Whatever survives goes either to the single-table dynamic
//! program of [`crate::dp`] or to the core-based state enumeration in
//! [`dp2`].

pub mod dp2;
pub mod step1;

use std::time::{Duration, Instant};

use crate::dp::{solve_dp1_with, DpBudget};
use crate::model::{Instance, Solution};

pub use dp2::{dp2, CoreWindow, Direction, DpState, Dp2Outcome, VarDecision};
pub use step1::{step1, PenaltyInterval, Step1, Step1Outcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverParams {
    /// How many lighter states each new state is compared against for
    /// dominance; `usize::MAX` compares against all of them.
    pub alpha: usize,
    /// Largest `n'·c` for which the single-table program may be used.
    pub t1: u128,
    /// Smallest window `r - l + 1` for which the single-table program is
    /// used; `None` means `n / 10`.
    pub t2: Option<usize>,
    /// State count above which the penalty-bound fathoming test runs;
    /// `usize::MAX` disables it.
    pub t3: usize,
    pub time_limit: Option<Duration>,
    pub dp_budget: DpBudget,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            alpha: 15,
            t1: 5_000_000_000,
            t2: None,
            t3: 3_000_000,
            time_limit: Some(Duration::from_secs(100)),
            dp_budget: DpBudget::default(),
        }
    }
}

impl SolverParams {
    pub fn t2_for(&self, n: usize) -> usize {
        self.t2.unwrap_or(n / 10)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondStep {
    /// Step 1 proved optimality.
    None,
    Dp1,
    Dp2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub second_step: SecondStep,
    pub step1_time: Duration,
    pub step2_time: Duration,
    /// Largest state list held by any of the dynamic programs.
    pub states_max: usize,
    pub interval: Option<PenaltyInterval>,
}

impl SolveStats {
    pub fn step1_only(&self) -> bool {
        self.second_step == SecondStep::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: Solution,
    pub stats: SolveStats,
}

/// Optimal solution; `certified_optimal` is false only after a time-out.
pub fn solve(inst: &Instance, params: &SolverParams) -> Solution {
    solve_with_stats(inst, params).solution
}

pub fn solve_with_stats(inst: &Instance, params: &SolverParams) -> SolveReport {
    let start = Instant::now();
    let deadline = params.time_limit.map(|d| start + d);
    let s1 = step1(inst);
    let step1_time = start.elapsed();
    let mut stats = SolveStats {
        second_step: SecondStep::None,
        step1_time,
        step2_time: Duration::ZERO,
        states_max: s1.states_max,
        interval: Some(s1.interval.clone()),
    };
    let reduced = match s1.outcome {
        Step1Outcome::Proven(sol) => {
            return SolveReport {
                solution: sol.certified(true),
                stats,
            }
        }
        Step1Outcome::Reduced { first, pi_min } => (first, pi_min),
    };
    let (first, pi_min) = reduced;
    let incumbent = s1.incumbent;
    let interval = &s1.interval;
    let t2 = params.t2_for(inst.len());
    let cells = (inst.len() - first) as u128 * inst.capacity() as u128;
    let window = interval.r - interval.l + 1;

    let t = Instant::now();
    let mut solution = None;
    if cells <= params.t1 && window >= t2 {
        if let Ok(sol) = solve_dp1_with(inst, first, pi_min, params.dp_budget) {
            stats.second_step = SecondStep::Dp1;
            solution = Some(if sol.value > incumbent.value {
                sol
            } else {
                incumbent.clone().certified(true)
            });
        }
    }
    let solution = solution.unwrap_or_else(|| {
        stats.second_step = SecondStep::Dp2;
        let out = dp2::dp2_until(inst, first, pi_min, incumbent, params, deadline);
        stats.states_max = stats.states_max.max(out.states_max);
        out.solution
    });
    stats.step2_time = t.elapsed();
    SolveReport { solution, stats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force;

    #[test]
    fn worked_instance() {
        let inst = Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap();
        let sol = solve(&inst, &SolverParams::default());
        assert_eq!(sol.value, 9);
        assert!(sol.certified_optimal);
        assert_eq!(sol.selected, vec![1]);
    }

    #[test]
    fn gap_family() {
        for m in [4i64, 8, 100, 1_000_000] {
            let h = m / 2;
            let inst = Instance::from_triples(&[(h + 1, h + 1, h), (h + 1, h + 1, h)], m).unwrap();
            let sol = solve(&inst, &SolverParams::default());
            assert_eq!(sol.value, 1, "M = {m}");
        }
    }

    #[test]
    fn forced_second_steps_agree() {
        let triples = [
            (12, 7, 5),
            (9, 4, 4),
            (8, 6, 1),
            (15, 9, 6),
            (4, 2, 0),
            (7, 5, 3),
            (11, 6, 2),
        ];
        let inst = Instance::from_triples(&triples, 17).unwrap();
        let want = brute_force(&inst).unwrap().value;
        for (t1, t2) in [(u128::MAX, Some(0)), (0, None)] {
            let params = SolverParams {
                t1,
                t2,
                ..SolverParams::default()
            };
            assert_eq!(solve(&inst, &params).value, want);
        }
    }
}
