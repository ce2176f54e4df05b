//! Dantzig bounds of the leading-item subproblems.
//!
//! For canonical item `j` the subproblem `PKP_j` is the knapsack over items
//! `j..n` with `π_j` subtracted, and `PKP_j^+` additionally packs item `j`
//! and fills `c - w_j` with items `j+1..n`. Both families are computed for all
//! `j` after a single efficiency sort.

use super::LpValue;
use crate::model::Instance;

/// `z(PKP_j^{LP})` for every canonical `j`.
///
/// Items are dropped in canonical order while a split pointer into the
/// efficiency-sorted array only ever moves forward, so after sorting the sweep
/// is linear.
pub fn bounds_pkp_j_lp(inst: &Instance) -> Vec<LpValue> {
    let n = inst.len();
    let c = inst.capacity();
    let order = inst.efficiency_order();
    let mut pos_of = vec![0usize; n];
    for (pos, &j) in order.iter().enumerate() {
        pos_of[j] = pos;
    }
    let mut active = vec![true; n];
    let (mut split, mut weight, mut profit) = (0usize, 0i64, 0i64);

    let advance = |split: &mut usize, weight: &mut i64, profit: &mut i64, active: &[bool]| {
        while *split < n {
            let it = inst.item(order[*split]);
            if active[*split] {
                if *weight + it.weight > c {
                    break;
                }
                *weight += it.weight;
                *profit += it.profit;
            }
            *split += 1;
        }
    };

    advance(&mut split, &mut weight, &mut profit, &active);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let bound = if split < n {
            let s = inst.item(order[split]);
            LpValue::dantzig(profit, c - weight, s.profit, s.weight)
        } else {
            LpValue::from_int(profit)
        };
        out.push(bound - inst.item(j).penalty);

        let pos = pos_of[j];
        active[pos] = false;
        if pos < split {
            weight -= inst.item(j).weight;
            profit -= inst.item(j).profit;
        }
        advance(&mut split, &mut weight, &mut profit, &active);
    }
    out
}

/// Complete binary tree over the efficiency-sorted items; every node stores
/// the weight and profit sums of the leaves below it.
struct SumTree {
    leaves: usize,
    weight: Vec<i64>,
    profit: Vec<i64>,
}

impl SumTree {
    fn new(items: impl ExactSizeIterator<Item = (i64, i64)>) -> Self {
        let leaves = items.len().next_power_of_two().max(1);
        let mut weight = vec![0i64; 2 * leaves];
        let mut profit = vec![0i64; 2 * leaves];
        for (k, (p, w)) in items.enumerate() {
            weight[leaves + k] = w;
            profit[leaves + k] = p;
        }
        for v in (1..leaves).rev() {
            weight[v] = weight[2 * v] + weight[2 * v + 1];
            profit[v] = profit[2 * v] + profit[2 * v + 1];
        }
        SumTree {
            leaves,
            weight,
            profit,
        }
    }

    fn remove(&mut self, leaf: usize) {
        let mut v = self.leaves + leaf;
        let (w, p) = (self.weight[v], self.profit[v]);
        while v >= 1 {
            self.weight[v] -= w;
            self.profit[v] -= p;
            v /= 2;
        }
    }

    /// Dantzig bound of the remaining leaves for capacity `cap`. Descends
    /// left while the left subtree alone overflows the residual capacity.
    fn dantzig(&self, mut cap: i64) -> LpValue {
        let mut v = 1usize;
        let mut profit = 0i64;
        while v < self.leaves {
            let left = 2 * v;
            if self.weight[left] > cap {
                v = left;
            } else {
                cap -= self.weight[left];
                profit += self.profit[left];
                v = left + 1;
            }
        }
        if self.weight[v] > cap {
            LpValue::dantzig(profit, cap, self.profit[v], self.weight[v])
        } else {
            LpValue::from_int(profit + self.profit[v])
        }
    }
}

/// `z(PKP_j^{+LP})` for every canonical `j`; `None` where `w_j > c`.
///
/// Items are deleted from the tree in canonical (non-increasing penalty)
/// order, so when item `j` is evaluated the tree holds exactly `j+1..n`.
/// Each deletion and each query costs `O(log n)`.
pub fn bounds_pkp_j_plus_lp(inst: &Instance) -> Vec<Option<LpValue>> {
    let n = inst.len();
    let c = inst.capacity();
    let order = inst.efficiency_order();
    let mut pos_of = vec![0usize; n];
    for (pos, &j) in order.iter().enumerate() {
        pos_of[j] = pos;
    }
    let mut tree = SumTree::new(order.iter().map(|&j| {
        let it = inst.item(j);
        (it.profit, it.weight)
    }));
    (0..n)
        .map(|j| {
            tree.remove(pos_of[j]);
            let it = inst.item(j);
            (it.weight <= c).then(|| tree.dantzig(c - it.weight) + (it.profit - it.penalty))
        })
        .collect()
}
