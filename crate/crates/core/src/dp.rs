//! The basic pseudo-polynomial algorithm: one knapsack table over the items
//! taken by increasing penalty.
//!
//! Before item `t` is added, the row holds `F(d)`, the best profit of items
//! with larger canonical index (so penalty at most `π_t`) within capacity `d`.
//! Item `t` as the leading item is then worth `F(c - w_t) + p_t - π_t`. Only
//! one row is kept; the selected set is recovered afterwards by a knapsack
//! solve with the leading item forced in.

use crate::error::{PkpError, Result};
use crate::kp::pack_with_leader;
use crate::model::{evaluate, Instance, Solution};

/// Limits for the table size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpBudget {
    /// Bound on `n * (c + 1)` cell updates.
    pub max_cells: u128,
    /// Bound on `c`; the row takes `8 * (c + 1)` bytes.
    pub max_capacity: i64,
}

impl Default for DpBudget {
    fn default() -> Self {
        DpBudget {
            max_cells: 5_000_000_000,
            max_capacity: 1 << 26,
        }
    }
}

/// Exact optimum by the single-table dynamic program.
pub fn solve_dp1(inst: &Instance) -> Result<Solution> {
    solve_dp1_with(inst, 0, 0, DpBudget::default())
}

/// Optimum over items `first..n` whose leading item has penalty at least
/// `pi_min`. The result is certified for that restricted problem.
pub fn solve_dp1_with(
    inst: &Instance,
    first: usize,
    pi_min: i64,
    budget: DpBudget,
) -> Result<Solution> {
    let n = inst.len();
    let c = inst.capacity();
    let cells = (n - first.min(n)) as u128 * (c as u128 + 1);
    if cells > budget.max_cells || c > budget.max_capacity {
        return Err(PkpError::BudgetExceeded {
            reason: format!(
                "table of {} items x capacity {c} exceeds the dynamic programming budget",
                n - first.min(n)
            ),
        });
    }
    let cap = c as usize;
    let mut row = vec![0i64; cap + 1];
    let mut best: (i64, Option<usize>) = (0, None);
    for t in (first..n).rev() {
        let it = inst.item(t);
        let w = it.weight as usize;
        if w > cap {
            continue;
        }
        if it.penalty >= pi_min {
            let cand = row[cap - w] + it.profit - it.penalty;
            if cand > best.0 || (cand == best.0 && best.1.is_some()) {
                best = (cand, Some(t));
            }
        }
        add_item(&mut row, w, it.profit);
    }
    let solution = match best.1 {
        None => Solution::empty(),
        Some(j) => {
            let it = inst.item(j);
            let fill = best.0 - it.profit + it.penalty;
            let sol = evaluate(inst, &pack_with_leader(inst, j, c, Some(fill)))?;
            debug_assert_eq!(sol.value, best.0);
            sol
        }
    };
    Ok(solution.certified(true))
}

/// `row[d] = max(row[d], row[d - w] + p)` for all `d >= w`, one item use.
///
/// Blocks of `w` cells are updated from the top down, so each block reads a
/// source block that has not been touched yet and the two never overlap.
fn add_item(row: &mut [i64], w: usize, p: i64) {
    let mut end = row.len();
    while end > w {
        let start = w.max(end - w);
        let (src, dst) = row.split_at_mut(start);
        let src = &src[start - w..end - w];
        for (x, &y) in dst[..end - start].iter_mut().zip(src) {
            *x = (*x).max(y + p);
        }
        end = start;
    }
}
