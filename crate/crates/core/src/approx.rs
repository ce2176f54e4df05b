//! Approximation for special cases, and fixtures without any ratio guarantee.
//!
//! `A(δ)` tries every item as the leading one, packs it and fills the rest of
//! the knapsack with later items by a `(1 - δ)`-approximate knapsack solve.
//! Four families of instances turn this into a `(1 - ε)` approximation for
//! the choice of `δ` made by [`select_delta`].

use num_rational::Ratio;

use crate::error::{PkpError, Result};
use crate::kp::solve_kp_fptas;
use crate::model::{evaluate, Instance, Solution};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxKind {
    /// `p_j >= π_j` for every item.
    ProfitDominatesPenalty,
    /// `π_j + 1 <= C` for every item.
    PenaltyBoundedByC(i64),
    /// `π_j - p_j <= C` for every item.
    GapBoundedByC(i64),
    /// `p_min >= ρ · π_max` with `ρ` in `(1/2, 1)`.
    ProfitFloor(Ratio<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproxCase {
    pub kind: ApproxKind,
    pub epsilon: Ratio<i64>,
}

impl ApproxCase {
    pub fn new(kind: ApproxKind, epsilon: Ratio<i64>) -> Self {
        ApproxCase { kind, epsilon }
    }

    /// Checks the case's precondition on `inst`.
    pub fn check(&self, inst: &Instance) -> Result<()> {
        let violated = |reason: String| {
            Err(PkpError::CaseViolated {
                case: self.name(),
                reason,
            })
        };
        match self.kind {
            ApproxKind::ProfitDominatesPenalty => {
                if let Some(it) = inst.items().iter().find(|it| it.profit < it.penalty) {
                    return violated(format!(
                        "item {} has profit {} below penalty {}",
                        it.original_index, it.profit, it.penalty
                    ));
                }
            }
            ApproxKind::PenaltyBoundedByC(c) => {
                if let Some(it) = inst.items().iter().find(|it| it.penalty + 1 > c) {
                    return violated(format!(
                        "item {} has penalty {} and C = {c}",
                        it.original_index, it.penalty
                    ));
                }
            }
            ApproxKind::GapBoundedByC(c) => {
                if let Some(it) = inst.items().iter().find(|it| it.penalty - it.profit > c) {
                    return violated(format!(
                        "item {} has penalty minus profit {} above C = {c}",
                        it.original_index,
                        it.penalty - it.profit
                    ));
                }
            }
            ApproxKind::ProfitFloor(rho) => {
                let p_min = inst.items().iter().map(|it| it.profit).min().unwrap_or(0);
                let pi_max = inst.max_penalty();
                let lhs = Ratio::from_integer(p_min as i128);
                let rhs = Ratio::new(*rho.numer() as i128, *rho.denom() as i128) * pi_max as i128;
                if lhs < rhs {
                    return violated(format!("p_min {p_min} is below {rho} * {pi_max}"));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ApproxKind::ProfitDominatesPenalty => "profit-dominates",
            ApproxKind::PenaltyBoundedByC(_) => "penalty-bounded",
            ApproxKind::GapBoundedByC(_) => "gap-bounded",
            ApproxKind::ProfitFloor(_) => "profit-floor",
        }
    }
}

/// The `δ` of the case, without looking at an instance. Parameters must be
/// in range: `ε` in `(0, 1)`, `C >= 1` or `C >= 0` for the gap case, and
/// `ρ` in `(1/2, 1)`.
pub fn delta_for(case: &ApproxCase) -> Result<Ratio<i64>> {
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let eps = case.epsilon;
    if eps <= zero || eps >= one {
        return Err(PkpError::InvalidParameter(format!(
            "epsilon {eps} must lie in (0, 1)"
        )));
    }
    let delta = match case.kind {
        ApproxKind::ProfitDominatesPenalty => eps,
        ApproxKind::PenaltyBoundedByC(c) => {
            if c < 1 {
                return Err(PkpError::InvalidParameter(format!("C = {c} must be at least 1")));
            }
            eps / c
        }
        ApproxKind::GapBoundedByC(c) => {
            if c < 0 {
                return Err(PkpError::InvalidParameter(format!("C = {c} must be non-negative")));
            }
            eps / (c + 1)
        }
        ApproxKind::ProfitFloor(rho) => {
            if rho <= Ratio::new(1, 2) || rho >= one {
                return Err(PkpError::InvalidParameter(format!(
                    "rho = {rho} must lie in (1/2, 1)"
                )));
            }
            eps * (rho * 2 - 1) / rho
        }
    };
    Ok(delta)
}

/// Checks the case on `inst` and returns its `δ`.
pub fn select_delta(case: &ApproxCase, inst: &Instance) -> Result<Ratio<i64>> {
    let delta = delta_for(case)?;
    case.check(inst)?;
    Ok(delta)
}

/// `A(δ)` with the n knapsack solves spread over the thread pool.
pub fn run_a_delta(inst: &Instance, delta: Ratio<i64>) -> Solution {
    run_a_delta_with(inst, delta, Execution::default())
}

pub fn run_a_delta_with(inst: &Instance, delta: Ratio<i64>, exec: Execution) -> Solution {
    let n = inst.len();
    let c = inst.capacity();
    let candidates = par::map_range(exec, n, |j| {
        let it = inst.item(j);
        if it.weight > c {
            return None;
        }
        let rest: Vec<usize> = (j + 1..n).collect();
        let (fill, mut set) = solve_kp_fptas(inst, &rest, c - it.weight, delta);
        set.push(j);
        Some((it.profit + fill - it.penalty, j, set))
    });
    // the earliest leader wins ties
    let best = candidates
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(i64, usize, Vec<usize>)>, cand| match acc {
            Some(ref a) if a.0 >= cand.0 => acc,
            _ => Some(cand),
        });
    match best {
        Some((value, _, set)) if value > 0 => {
            evaluate(inst, &set).expect("leader and fill within capacity")
        }
        _ => Solution::empty(),
    }
}

/// Two items `p = w = M/2 + 1`, `π = M/2`, capacity `M`: any single item is
/// worth 1 while the relaxation bound grows with `M`.
pub fn make_inapprox_fixture(m: i64) -> Result<Instance> {
    if m < 4 || m % 2 != 0 {
        return Err(PkpError::InvalidParameter(format!(
            "M = {m} must be even and at least 4"
        )));
    }
    let h = m / 2;
    Instance::from_triples(&[(h + 1, h + 1, h), (h + 1, h + 1, h)], m)
        .map(|inst| inst.with_label(format!("gap_M{m}")))
}

/// Subset-sum reduction: `p = w = w'_j`, `π = W' - 1`, capacity `W'`. The
/// optimum is 1 if some subset sums to exactly `W'` and 0 otherwise.
pub fn make_ssp_fixture(weights: &[i64], target: i64) -> Result<Instance> {
    if target < 1 || weights.iter().any(|&w| w < 1) {
        return Err(PkpError::InvalidParameter(
            "subset-sum weights and target must be positive".into(),
        ));
    }
    let triples: Vec<(i64, i64, i64)> = weights.iter().map(|&w| (w, w, target - 1)).collect();
    Instance::from_triples(&triples, target)
}
