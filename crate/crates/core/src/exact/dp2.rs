//! Core-based state enumeration for the reduced problem.
//!
//! The items of the reduced problem are sorted by efficiency and split as in
//! the penalty-free knapsack. A window `[a, b)` of positions around the split
//! item is enumerated by dynamic programming; positions before `a` are packed
//! and positions from `b` on are left out. Each state records profit `ν`,
//! weight `μ`, the largest penalty packed inside the window (`π_core`), the
//! overall largest penalty (`π_tot`) and `ρ = ν - max(π_core, Π_min)`.
//!
//! States are pruned by dominance on `(μ, ν, ρ)` against a bounded number of
//! lighter states, by a penalty-restricted relaxation when the list grows
//! large, and by a constant-time bound along the next item outside the
//! window. Items next to the window are tested before they enter it and are
//! fixed to their split value when no improving solution can flip them.

use std::time::Instant;

use crate::kp::pack_with_leader;
use crate::model::{efficiency_cmp, evaluate, Instance, Solution};

use super::SolverParams;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpState {
    pub nu: i64,
    pub mu: i64,
    pub pi_core: i64,
    pub pi_tot: i64,
    /// `nu - max(pi_core, Π_min)`.
    pub rho: i64,
    /// Canonical index of the leading item among window items, if any.
    pub lead_core: u32,
    /// Canonical index of the leading item of the whole packing, if any.
    pub lead_tot: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    InsertRight,
    RemoveLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarDecision {
    Fix0,
    Fix1,
    Enter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dp2Outcome {
    pub solution: Solution,
    pub states_max: usize,
}

/// Item data of the reduced problem in efficiency order.
struct Items {
    id: Vec<u32>,
    p: Vec<i64>,
    w: Vec<i64>,
    pen: Vec<i64>,
    /// Penalty by canonical index, for leads.
    pen_of: Vec<i64>,
    /// `min id` over positions `< k`.
    prefix_min_id: Vec<u32>,
    prefix_p: Vec<i64>,
    prefix_w: Vec<i64>,
    /// Distinct penalties of the reduced problem and 0, ascending.
    levels: Vec<i64>,
    cap: i64,
    pi_min: i64,
    split: usize,
}

impl Items {
    fn new(inst: &Instance, first: usize, pi_min: i64) -> Self {
        let cap = inst.capacity();
        let mut order: Vec<usize> = (first..inst.len())
            .filter(|&j| inst.item(j).weight <= cap)
            .collect();
        order.sort_by(|&x, &y| efficiency_cmp(inst.item(x), inst.item(y)).then(x.cmp(&y)));
        let m = order.len();
        let id: Vec<u32> = order.iter().map(|&j| j as u32).collect();
        let p: Vec<i64> = order.iter().map(|&j| inst.item(j).profit).collect();
        let w: Vec<i64> = order.iter().map(|&j| inst.item(j).weight).collect();
        let pen: Vec<i64> = order.iter().map(|&j| inst.item(j).penalty).collect();
        let mut prefix_min_id = vec![NONE; m + 1];
        let mut prefix_p = vec![0i64; m + 1];
        let mut prefix_w = vec![0i64; m + 1];
        for k in 0..m {
            prefix_min_id[k + 1] = prefix_min_id[k].min(id[k]);
            prefix_p[k + 1] = prefix_p[k] + p[k];
            prefix_w[k + 1] = prefix_w[k] + w[k];
        }
        let split = prefix_w.partition_point(|&x| x <= cap).saturating_sub(1).min(m);
        let mut levels: Vec<i64> = pen.clone();
        levels.push(0);
        levels.sort_unstable();
        levels.dedup();
        Items {
            id,
            p,
            w,
            pen,
            pen_of: inst.items().iter().map(|it| it.penalty).collect(),
            prefix_min_id,
            prefix_p,
            prefix_w,
            levels,
            cap,
            pi_min,
            split,
        }
    }

    fn len(&self) -> usize {
        self.id.len()
    }

    fn penalty_of(&self, lead: u32) -> i64 {
        if lead == NONE {
            0
        } else {
            self.pen_of[lead as usize]
        }
    }

    fn slope(&self, k: usize) -> (i64, i64) {
        (self.p[k], self.w[k])
    }
}

/// `value + (cap - weight) * pe / we <= z` in exact arithmetic.
#[inline]
fn at_most(value: i64, residual: i64, slope: (i64, i64), z: i64) -> bool {
    (value - z) as i128 * slope.1 as i128 + residual as i128 * slope.0 as i128 <= 0
}

/// The enumerated window and its states.
pub struct CoreWindow<'a> {
    items: &'a Items,
    /// First position of the window.
    pub a: usize,
    /// One past the last position of the window.
    pub b: usize,
    pub split: usize,
    /// States sorted by non-decreasing `mu`.
    pub states: Vec<DpState>,
    scratch: Vec<DpState>,
    in_core: Vec<bool>,
    /// Smallest canonical id among left items fixed to one.
    fixed_one_lead: u32,
    /// Best value and its leading item.
    pub z: i64,
    pub z_lead: Option<usize>,
    alpha: usize,
    t3: usize,
    pub states_max: usize,
}

impl<'a> CoreWindow<'a> {
    fn new(items: &'a Items, z: i64, params: &SolverParams) -> Self {
        let s = items.split;
        let nu = items.prefix_p[s];
        let mu = items.prefix_w[s];
        let lead_tot = items.prefix_min_id[s];
        let state = DpState {
            nu,
            mu,
            pi_core: 0,
            pi_tot: items.penalty_of(lead_tot),
            rho: nu - items.pi_min,
            lead_core: NONE,
            lead_tot,
        };
        let mut win = CoreWindow {
            items,
            a: s,
            b: s,
            split: s,
            states: vec![state],
            scratch: Vec::new(),
            in_core: vec![false; items.len()],
            fixed_one_lead: NONE,
            z,
            z_lead: None,
            alpha: params.alpha.max(1),
            t3: params.t3,
            states_max: 1,
        };
        win.offer(&state);
        win
    }

    /// Smallest canonical id among packed items outside the enumerated set.
    fn outside_lead(&self) -> u32 {
        self.items.prefix_min_id[self.a].min(self.fixed_one_lead)
    }

    fn offer(&mut self, s: &DpState) {
        if s.mu <= self.items.cap && s.nu - s.pi_tot > self.z {
            self.z = s.nu - s.pi_tot;
            self.z_lead = (s.lead_tot != NONE).then_some(s.lead_tot as usize);
        }
    }

    /// Next slope to the right and to the left of the window.
    fn slopes(&self) -> (Option<(i64, i64)>, Option<(i64, i64)>) {
        let right = (self.b < self.items.len()).then(|| self.items.slope(self.b));
        let left = (self.a > 0).then(|| self.items.slope(self.a - 1));
        (right, left)
    }

    /// Whether the reduction bound of `s` still exceeds the incumbent.
    fn bound_exceeds(&self, s: &DpState, right: Option<(i64, i64)>, left: Option<(i64, i64)>) -> bool {
        let residual = self.items.cap - s.mu;
        if residual >= 0 {
            match right {
                Some(sl) => !at_most(s.rho, residual, sl, self.z),
                None => s.rho > self.z,
            }
        } else {
            match left {
                Some(sl) => !at_most(s.rho, residual, sl, self.z),
                None => false,
            }
        }
    }

    /// Toggled copy of `s` for item at position `d`.
    fn toggled(&self, s: &DpState, d: usize, dir: Direction, outside: u32) -> DpState {
        let it = self.items;
        match dir {
            Direction::InsertRight => {
                let lead_core = s.lead_core.min(it.id[d]);
                let pi_core = it.penalty_of(lead_core);
                let lead_tot = s.lead_tot.min(it.id[d]);
                DpState {
                    nu: s.nu + it.p[d],
                    mu: s.mu + it.w[d],
                    pi_core,
                    pi_tot: it.penalty_of(lead_tot),
                    rho: s.nu + it.p[d] - pi_core.max(it.pi_min),
                    lead_core,
                    lead_tot,
                }
            }
            Direction::RemoveLeft => {
                let lead_tot = s.lead_core.min(outside);
                DpState {
                    nu: s.nu - it.p[d],
                    mu: s.mu - it.w[d],
                    pi_core: s.pi_core,
                    pi_tot: it.penalty_of(lead_tot),
                    rho: s.rho - it.p[d],
                    lead_core: s.lead_core,
                    lead_tot,
                }
            }
        }
    }

    /// Untoggled copy: unchanged for insertions, gains the item inside the
    /// window for removals.
    fn kept(&self, s: &DpState, d: usize, dir: Direction) -> DpState {
        match dir {
            Direction::InsertRight => *s,
            Direction::RemoveLeft => {
                let it = self.items;
                let lead_core = s.lead_core.min(it.id[d]);
                let pi_core = it.penalty_of(lead_core);
                DpState {
                    pi_core,
                    rho: s.nu - pi_core.max(it.pi_min),
                    lead_core,
                    ..*s
                }
            }
        }
    }

    /// Constant-time bounds for flipping the item at `j` away from its split
    /// value, then the bound over all states with `j` flipped.
    pub fn variable_bound_tests(&self, j: usize) -> VarDecision {
        let it = self.items;
        let s = it.split;
        let (p1, w1) = (it.prefix_p[s], it.prefix_w[s]);
        let slope = if s < it.len() { it.slope(s) } else { (0, 1) };
        let left = j < s;
        let (fix, u_value, residual) = if left {
            (VarDecision::Fix1, p1 - it.p[j] - it.pi_min, it.cap - w1 + it.w[j])
        } else {
            (
                VarDecision::Fix0,
                p1 + it.p[j] - it.pen[j].max(it.pi_min),
                it.cap - w1 - it.w[j],
            )
        };
        if at_most(u_value, residual, slope, self.z) {
            return fix;
        }

        // enumerative bound with the window already grown by j
        let (dir, a, b) = if left {
            (Direction::RemoveLeft, j, self.b)
        } else {
            (Direction::InsertRight, self.a, j + 1)
        };
        let right = (b < it.len()).then(|| it.slope(b));
        let left_slope = (a > 0).then(|| it.slope(a - 1));
        let outside = it.prefix_min_id[a].min(self.fixed_one_lead);
        let promising = self.states.iter().any(|st| {
            let t = self.toggled(st, j, dir, outside);
            self.bound_exceeds(&t, right, left_slope)
        });
        if promising {
            VarDecision::Enter
        } else {
            fix
        }
    }

    /// Upper bound on states derived from `s` whose overall leading penalty
    /// is at most `cap_pen`: the window items of `s` plus a relaxation over
    /// the other items with penalty at most `cap_pen`.
    fn penalty_bound_at_most(&self, s: &DpState, cap_pen: i64) -> bool {
        if s.pi_core > cap_pen {
            return true;
        }
        let it = self.items;
        let (out_p, out_w) = self.outside_packed();
        let nu_core = s.nu - out_p;
        let mut residual = it.cap - (s.mu - out_w);
        if residual < 0 {
            return true;
        }
        let base = nu_core - s.pi_core.max(it.pi_min);
        let mut profit = 0i64;
        for k in 0..it.len() {
            if self.in_core[k] || it.pen[k] > cap_pen {
                continue;
            }
            if it.w[k] <= residual {
                residual -= it.w[k];
                profit += it.p[k];
            } else {
                return at_most(base + profit, residual, it.slope(k), self.z);
            }
        }
        base + profit <= self.z
    }

    /// Profit and weight of packed items outside the enumerated set.
    fn outside_packed(&self) -> (i64, i64) {
        let it = self.items;
        let (mut p, mut w) = (it.prefix_p[self.a], it.prefix_w[self.a]);
        for k in self.a..it.split.min(it.len()) {
            if !self.in_core[k] {
                p += it.p[k];
                w += it.w[k];
            }
        }
        (p, w)
    }

    /// Merges the states with their copies toggled on item `d`, then prunes
    /// by dominance, updates the incumbent and applies the reduction bound.
    pub fn merge_step(&mut self, d: usize, dir: Direction) {
        match dir {
            Direction::InsertRight => {
                debug_assert_eq!(d, self.b);
                self.b += 1;
            }
            Direction::RemoveLeft => {
                debug_assert_eq!(d + 1, self.a);
                self.a -= 1;
            }
        }
        self.in_core[d] = true;
        let outside = self.outside_lead();

        let mut states = std::mem::take(&mut self.states);
        let mut out = std::mem::take(&mut self.scratch);
        out.clear();
        out.reserve(2 * states.len());
        let total = 2 * states.len();
        let (mut i, mut k) = (0usize, 0usize);
        let n = states.len();
        while i < n || k < n {
            let plain = (i < n).then(|| self.kept(&states[i], d, dir));
            let flip = (k < n).then(|| self.toggled(&states[k], d, dir, outside));
            let take_plain = match (&plain, &flip) {
                (Some(x), Some(y)) => order_before(x, y),
                (Some(_), None) => true,
                _ => false,
            };
            let cand = if take_plain {
                i += 1;
                plain.unwrap()
            } else {
                k += 1;
                flip.unwrap()
            };
            if cand.mu > self.items.cap && self.a == 0 {
                // overweight with nothing left to remove
                continue;
            }
            if self.survives(&out, &cand, total) {
                out.push(cand);
            }
        }
        states.clear();
        self.scratch = states;

        for s in &out {
            if s.mu <= self.items.cap && s.nu - s.pi_tot > self.z {
                self.z = s.nu - s.pi_tot;
                self.z_lead = (s.lead_tot != NONE).then_some(s.lead_tot as usize);
            }
        }
        self.states_max = self.states_max.max(out.len());
        self.states = out;
        self.reduce();
    }

    /// Dominance against up to `alpha` lighter kept states, with the
    /// penalty-bound test when the list is long.
    fn survives(&self, kept: &[DpState], cand: &DpState, total: usize) -> bool {
        let from = kept.len().saturating_sub(self.alpha);
        let mut best_rho: Option<i64> = None;
        for s in kept[from..].iter().rev() {
            if s.nu >= cand.nu {
                if s.rho >= cand.rho {
                    return false;
                }
                best_rho = Some(best_rho.map_or(s.rho, |r| r.max(s.rho)));
            }
        }
        if let Some(rho_i) = best_rho {
            if total > self.t3 {
                // largest penalty level that would escape dominance
                let limit = cand.nu - rho_i;
                let idx = self.items.levels.partition_point(|&v| v < limit);
                if idx == 0 {
                    return false;
                }
                let hat = self.items.levels[idx - 1];
                if self.penalty_bound_at_most(cand, hat) {
                    return false;
                }
            }
        }
        true
    }

    /// Drops states whose bound along the next outside item cannot beat
    /// the incumbent.
    pub fn reduce(&mut self) {
        let (right, left) = self.slopes();
        let mut states = std::mem::take(&mut self.states);
        states.retain(|s| self.bound_exceeds(s, right, left));
        self.states = states;
    }

    fn fix_left(&mut self, j: usize) {
        debug_assert_eq!(j + 1, self.a);
        self.a -= 1;
        self.fixed_one_lead = self.fixed_one_lead.min(self.items.id[j]);
    }

    fn fix_right(&mut self, j: usize) {
        debug_assert_eq!(j, self.b);
        self.b += 1;
    }
}

/// Weight ascending; for equal weight the higher profit, then the higher
/// `rho`, comes first.
#[inline]
fn order_before(x: &DpState, y: &DpState) -> bool {
    (x.mu, -x.nu, -x.rho) <= (y.mu, -y.nu, -y.rho)
}

/// Best solution over items `first..n` with leading penalty at least
/// `pi_min`, or the incumbent if nothing beats it.
pub fn dp2(
    inst: &Instance,
    first: usize,
    pi_min: i64,
    incumbent: Solution,
    params: &SolverParams,
) -> Dp2Outcome {
    let deadline = params.time_limit.map(|d| Instant::now() + d);
    dp2_until(inst, first, pi_min, incumbent, params, deadline)
}

pub(crate) fn dp2_until(
    inst: &Instance,
    first: usize,
    pi_min: i64,
    incumbent: Solution,
    params: &SolverParams,
    deadline: Option<Instant>,
) -> Dp2Outcome {
    let items = Items::new(inst, first, pi_min);
    let m = items.len();
    let mut win = CoreWindow::new(&items, incumbent.value, params);
    let mut timed_out = false;
    if items.split < m {
        win.merge_step(items.split, Direction::InsertRight);
    } else {
        win.reduce();
    }
    while !win.states.is_empty() && (win.a > 0 || win.b < m) {
        if deadline.is_some_and(|t| Instant::now() >= t) {
            timed_out = true;
            break;
        }
        if win.a > 0 {
            let j = win.a - 1;
            match win.variable_bound_tests(j) {
                VarDecision::Enter => win.merge_step(j, Direction::RemoveLeft),
                _ => {
                    win.fix_left(j);
                    win.reduce();
                }
            }
            if win.states.is_empty() {
                break;
            }
        }
        if win.b < m {
            let j = win.b;
            match win.variable_bound_tests(j) {
                VarDecision::Enter => win.merge_step(j, Direction::InsertRight),
                _ => {
                    win.fix_right(j);
                    win.reduce();
                }
            }
        }
    }

    let states_max = win.states_max;
    let solution = if win.z > incumbent.value {
        match win.z_lead {
            Some(j) => {
                // an optimum fixes the fill of its leader exactly
                let it = inst.item(j);
                let fill = (!timed_out).then(|| win.z - it.profit + it.penalty);
                let sol = evaluate(inst, &pack_with_leader(inst, j, inst.capacity(), fill))
                    .expect("leading item fits");
                debug_assert!(sol.value >= win.z);
                sol
            }
            None => Solution::empty(),
        }
    } else {
        incumbent
    };
    Dp2Outcome {
        solution: solution.certified(!timed_out),
        states_max,
    }
}
