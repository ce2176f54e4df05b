//! Expanding-core dynamic programming for the plain 0-1 knapsack.
//!
//! Items are sorted by efficiency and the search starts from the split
//! solution (everything before the split item packed). The core `[left,
//! right)` grows by alternately offering the next item on the right for
//! insertion and the next item on the left for removal. States are
//! `(profit, weight)` pairs kept sorted by weight with strictly increasing
//! profit; every state is bounded by the slope of the next item outside the
//! core and discarded when it cannot beat the incumbent.
//!
//! Each state remembers its last 64 toggles in a bit mask. If the optimum was
//! reached after more than 64 merges, the known decisions are fixed and the
//! remaining problem is solved again for the missing part.

use crate::model::{efficiency_cmp, Item};

#[derive(Debug, Clone, Copy)]
pub(crate) struct KpItem {
    pub profit: i64,
    pub weight: i64,
    /// Canonical index; the smallest selected id is the leading item.
    pub id: usize,
}

impl KpItem {
    pub fn from_item(it: &Item, id: usize) -> Self {
        KpItem {
            profit: it.profit,
            weight: it.weight,
            id,
        }
    }
}

const NO_LEAD: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct State {
    profit: i64,
    weight: i64,
    /// Smallest id among the core items this state packs.
    lead: u32,
    mask: u64,
}

#[derive(Debug, Clone)]
enum Best {
    /// Only a target value is known so far.
    Nothing,
    Split,
    Greedy(Vec<usize>),
    State { mask: u64, log_len: usize },
}

/// Best penalized value seen among feasible states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PkpSighting {
    pub value: i64,
    pub lead: usize,
}

pub(crate) struct CoreOutcome {
    pub value: i64,
    /// Selected ids, ascending.
    pub selected: Vec<usize>,
    pub sighting: Option<PkpSighting>,
    pub max_states: usize,
}

/// Penalties indexed by item id, used to score states as penalized solutions.
pub(crate) type PenaltyLookup<'a> = Option<&'a dyn Fn(usize) -> i64>;

struct Sightings<'a> {
    penalty: PenaltyLookup<'a>,
    best: Option<PkpSighting>,
}

impl Sightings<'_> {
    fn offer(&mut self, profit: i64, lead: u32) {
        let Some(penalty) = self.penalty else { return };
        if lead == NO_LEAD {
            return;
        }
        let value = profit - penalty(lead as usize);
        if self.best.map_or(true, |b| value > b.value) {
            self.best = Some(PkpSighting {
                value,
                lead: lead as usize,
            });
        }
    }
}

/// `floor(profit + (cap - weight) * p_e / w_e) <= z`, evaluated exactly.
/// Profits are integral, so a bound below `z + 1` cannot improve on `z`.
#[inline]
fn bound_at_most(profit: i64, weight: i64, cap: i64, slope: Option<(i64, i64)>, z: i64) -> bool {
    match slope {
        Some((pe, we)) => {
            ((profit - z - 1) as i128 * we as i128 + (cap - weight) as i128 * pe as i128) < 0
        }
        None => weight > cap || profit <= z,
    }
}

pub(crate) fn solve(items: &[KpItem], capacity: i64, penalty: PenaltyLookup<'_>) -> CoreOutcome {
    solve_inner(items, capacity, penalty, None).expect("no target to miss")
}

/// Like [`solve`], but `value` is known to be attainable or, with `exact`,
/// to be the optimum: pruning starts from `value - 1`, and with `exact` the
/// search ends as soon as `value` is reached. `None` if no packing reaches
/// `value`.
pub(crate) fn solve_reaching(
    items: &[KpItem],
    capacity: i64,
    penalty: PenaltyLookup<'_>,
    value: i64,
    exact: bool,
) -> Option<CoreOutcome> {
    solve_inner(items, capacity, penalty, Some((value, exact)))
}

fn solve_inner(
    items: &[KpItem],
    capacity: i64,
    penalty: PenaltyLookup<'_>,
    target: Option<(i64, bool)>,
) -> Option<CoreOutcome> {
    let mut items: Vec<KpItem> = items
        .iter()
        .copied()
        .filter(|it| it.weight <= capacity)
        .collect();
    items.sort_by(|a, b| {
        let (ia, ib) = (
            Item::new(a.profit, a.weight, 0, 0),
            Item::new(b.profit, b.weight, 0, 0),
        );
        efficiency_cmp(&ia, &ib).then(a.id.cmp(&b.id))
    });
    let m = items.len();
    let mut sightings = Sightings {
        penalty,
        best: None,
    };

    // prefix minimum of ids, for the lead of the fixed-to-one block
    let mut left_lead = vec![NO_LEAD; m + 1];
    for k in 0..m {
        left_lead[k + 1] = left_lead[k].min(items[k].id as u32);
    }

    let mut split = 0usize;
    let (mut split_w, mut split_p) = (0i64, 0i64);
    while split < m && split_w + items[split].weight <= capacity {
        split_w += items[split].weight;
        split_p += items[split].profit;
        split += 1;
    }
    sightings.offer(split_p, left_lead[split]);
    if split == m {
        if target.is_some_and(|(t, _)| t > split_p) {
            return None;
        }
        let mut selected: Vec<usize> = items.iter().map(|it| it.id).collect();
        selected.sort_unstable();
        return Some(CoreOutcome {
            value: split_p,
            selected,
            sighting: sightings.best,
            max_states: 1,
        });
    }

    // forward greedy for a first incumbent
    let (mut best_value, mut best) = match target {
        Some((t, _)) if t > split_p => (t - 1, Best::Nothing),
        _ => (split_p, Best::Split),
    };
    // reaching the Dantzig bound (or the known optimum) ends the search
    let ceiling = match target {
        Some((t, true)) => t,
        _ => {
            let (ps, ws) = (items[split].profit, items[split].weight);
            split_p + ((capacity - split_w) as i128 * ps as i128 / ws as i128) as i64
        }
    };
    {
        let mut w = split_w;
        let mut p = split_p;
        let mut lead = left_lead[split];
        let mut added = Vec::new();
        for (k, it) in items.iter().enumerate().skip(split + 1) {
            if w + it.weight <= capacity {
                w += it.weight;
                p += it.profit;
                lead = lead.min(it.id as u32);
                added.push(k);
            }
        }
        sightings.offer(p, lead);
        if p > best_value {
            best_value = p;
            best = Best::Greedy(added);
        }
    }

    let slope_at = |k: usize| (items[k].profit, items[k].weight);

    let mut states = vec![State {
        profit: split_p,
        weight: split_w,
        lead: NO_LEAD,
        mask: 0,
    }];
    let mut scratch: Vec<State> = Vec::new();
    let mut log: Vec<usize> = Vec::new();
    let (mut left, mut right) = (split, split);
    // lead of left items fixed at one without entering the core
    let mut fixed_lead = NO_LEAD;
    let mut max_states = 1usize;

    while !states.is_empty() && (left > 0 || right < m) && best_value < ceiling {
        for insert in [true, false] {
            let d = if insert {
                if right >= m {
                    continue;
                }
                right += 1;
                right - 1
            } else {
                if left == 0 {
                    continue;
                }
                left -= 1;
                left
            };
            let it = items[d];
            let (dp, dw) = if insert {
                (it.profit, it.weight)
            } else {
                (-it.profit, -it.weight)
            };
            let right_slope = (right < m).then(|| slope_at(right));
            let left_slope = (left > 0).then(|| slope_at(left - 1));
            let slope_for = |w: i64| if w <= capacity { right_slope } else { left_slope };

            // enumerative bound: can toggling d improve on the incumbent?
            let promising = states.iter().any(|s| {
                let (p, w) = (s.profit + dp, s.weight + dw);
                let slope = slope_for(w);
                if w > capacity && slope.is_none() {
                    return false;
                }
                !bound_at_most(p, w, capacity, slope, best_value)
            });
            if !promising {
                if !insert {
                    fixed_lead = fixed_lead.min(it.id as u32);
                }
                continue;
            }

            log.push(d);
            let lead_outside = left_lead[left].min(fixed_lead);
            merge(&states, &mut scratch, |s| {
                if insert {
                    State {
                        profit: s.profit + dp,
                        weight: s.weight + dw,
                        lead: s.lead.min(it.id as u32),
                        mask: (s.mask << 1) | 1,
                    }
                } else {
                    State {
                        profit: s.profit + dp,
                        weight: s.weight + dw,
                        lead: s.lead,
                        mask: (s.mask << 1) | 1,
                    }
                }
            }, |s| State {
                lead: if insert { s.lead } else { s.lead.min(it.id as u32) },
                mask: s.mask << 1,
                ..s
            });
            std::mem::swap(&mut states, &mut scratch);

            for s in &states {
                if s.weight <= capacity {
                    sightings.offer(s.profit, s.lead.min(lead_outside));
                    if s.profit > best_value {
                        best_value = s.profit;
                        best = Best::State {
                            mask: s.mask,
                            log_len: log.len(),
                        };
                    }
                }
            }
            max_states = max_states.max(states.len());
            states.retain(|s| {
                let slope = slope_for(s.weight);
                if s.weight > capacity && slope.is_none() {
                    return false;
                }
                !bound_at_most(s.profit, s.weight, capacity, slope, best_value)
            });
            if states.is_empty() || best_value >= ceiling {
                break;
            }
        }
    }

    let mut chosen: Vec<bool> = (0..m).map(|k| k < split).collect();
    let selected = match best {
        Best::Nothing => return None,
        Best::Split => collect_ids(&items, &chosen),
        Best::Greedy(added) => {
            for k in added {
                chosen[k] = true;
            }
            collect_ids(&items, &chosen)
        }
        Best::State { mask, log_len } => {
            let known = log_len.min(64);
            let mut decided = vec![false; m];
            for bit in 0..known {
                let k = log[log_len - 1 - bit];
                decided[k] = true;
                if (mask >> bit) & 1 == 1 {
                    chosen[k] = !chosen[k];
                }
            }
            if log_len <= 64 {
                collect_ids(&items, &chosen)
            } else {
                // fix the known tail of decisions and solve the rest again
                let mut fixed_w = 0i64;
                let mut fixed_p = 0i64;
                let mut ids = Vec::new();
                let mut rest = Vec::new();
                for k in 0..m {
                    if decided[k] {
                        if chosen[k] {
                            fixed_w += items[k].weight;
                            fixed_p += items[k].profit;
                            ids.push(items[k].id);
                        }
                    } else {
                        rest.push(items[k]);
                    }
                }
                let sub = solve_reaching(&rest, capacity - fixed_w, None, best_value - fixed_p, true)
                    .expect("known optimum of the remainder");
                debug_assert_eq!(sub.value + fixed_p, best_value);
                ids.extend(sub.selected);
                ids.sort_unstable();
                ids
            }
        }
    };
    Some(CoreOutcome {
        value: best_value,
        selected,
        sighting: sightings.best,
        max_states,
    })
}

fn collect_ids(items: &[KpItem], chosen: &[bool]) -> Vec<usize> {
    let mut ids: Vec<usize> = items
        .iter()
        .zip(chosen)
        .filter(|(_, &c)| c)
        .map(|(it, _)| it.id)
        .collect();
    ids.sort_unstable();
    ids
}

/// Merges `states` with the toggled copies into `out`, sorted by weight,
/// keeping only states whose profit strictly exceeds every lighter state.
fn merge<T, K>(states: &[State], out: &mut Vec<State>, toggle: T, keep: K)
where
    T: Fn(State) -> State,
    K: Fn(State) -> State,
{
    out.clear();
    out.reserve(2 * states.len());
    let mut best_profit = i64::MIN;
    let mut push = |s: State, out: &mut Vec<State>| {
        if s.profit > best_profit {
            best_profit = s.profit;
            // same weight, higher profit replaces the previous entry
            if let Some(last) = out.last() {
                if last.weight == s.weight {
                    out.pop();
                }
            }
            out.push(s);
        }
    };
    let (mut i, mut k) = (0usize, 0usize);
    // toggled copies are sorted by weight as well, since the toggle shifts
    // every weight by the same amount
    while i < states.len() || k < states.len() {
        let take_plain = if i == states.len() {
            false
        } else if k == states.len() {
            true
        } else {
            let a = keep(states[i]);
            let b = toggle(states[k]);
            a.weight < b.weight || (a.weight == b.weight && a.profit >= b.profit)
        };
        if take_plain {
            push(keep(states[i]), out);
            i += 1;
        } else {
            push(toggle(states[k]), out);
            k += 1;
        }
    }
}
