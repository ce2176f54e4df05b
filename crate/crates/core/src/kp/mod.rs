//! Plain 0-1 knapsack subroutines over subsets of a PKP instance.
//!
//! [`solve_kp_exact`] is the penalty-aware exact solver used by the first
//! step of the exact algorithm: besides the knapsack optimum it reports the
//! largest canonical index that can lead an optimal knapsack solution (so the
//! smallest penalty any optimal packing has to pay) and the best penalized
//! solution met while searching. [`solve_kp_fptas`] is the profit-scaling
//! approximation scheme used by `approx`.

pub(crate) mod core;
mod fptas;

pub use fptas::solve_kp_fptas;

use crate::model::{evaluate, Instance, Solution};
use self::core::{CoreOutcome, KpItem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpResult {
    /// Knapsack optimum over the item subset.
    pub value: i64,
    /// An optimal knapsack packing whose leading item is `first_item_index`.
    pub selected: Vec<usize>,
    /// Largest canonical index that is the smallest selected index of some
    /// optimal packing; `None` when the optimum is 0.
    pub first_item_index: Option<usize>,
    /// Penalty of `first_item_index`, 0 when absent.
    pub min_leading_penalty: i64,
    /// Best penalized solution encountered.
    pub incumbent_pkp: Solution,
    /// Largest state list seen by any of the underlying runs.
    pub max_states: usize,
}

pub(crate) fn kp_items(inst: &Instance, items: &[usize]) -> Vec<KpItem> {
    items
        .iter()
        .map(|&j| KpItem::from_item(inst.item(j), j))
        .collect()
}

fn run(inst: &Instance, items: &[KpItem], capacity: i64) -> CoreOutcome {
    let penalty = |j: usize| inst.item(j).penalty;
    self::core::solve(items, capacity, Some(&penalty))
}

/// Exact knapsack over `items` (canonical indices) with the given capacity.
///
/// # Panics
///
/// If `capacity` is negative or exceeds the instance capacity, or an index
/// is out of range.
pub fn solve_kp_exact(inst: &Instance, items: &[usize], capacity: i64) -> KpResult {
    assert!(
        (0..=inst.capacity()).contains(&capacity),
        "capacity {capacity} outside [0, {}]",
        inst.capacity()
    );
    let mut pool = kp_items(inst, items);
    pool.sort_by_key(|it| it.id);
    pool.dedup_by_key(|it| it.id);

    let first = run(inst, &pool, capacity);
    let mut max_states = first.max_states;
    let mut sighting = first.sighting;
    let mut note = |s: Option<self::core::PkpSighting>| {
        if let Some(s) = s {
            if sighting.map_or(true, |b| s.value > b.value) {
                sighting = Some(s);
            }
        }
    };

    let value = first.value;
    let (first_item_index, selected) = if value == 0 {
        (None, Vec::new())
    } else {
        // z over the suffix of ids >= f is non-increasing in f; find the last
        // suffix that still reaches the optimum
        let lead = first.selected[0];
        let mut lo = pool.partition_point(|it| it.id < lead);
        let mut hi = pool.len();
        let mut best_sel = first.selected.clone();
        // usually the leader found first is already the last possible one,
        // so probe right after it before bisecting
        let mut probe_next = true;
        while hi - lo > 1 {
            let mid = if probe_next { lo + 1 } else { lo + (hi - lo) / 2 };
            probe_next = false;
            // a suffix never beats the full optimum, so `value` is exact here
            let penalty = |j: usize| inst.item(j).penalty;
            match self::core::solve_reaching(&pool[mid..], capacity, Some(&penalty), value, true) {
                Some(probe) => {
                    max_states = max_states.max(probe.max_states);
                    note(probe.sighting);
                    // the probe's own leading id may lie further right than mid
                    let lead = probe.selected[0];
                    lo = pool.partition_point(|it| it.id < lead);
                    best_sel = probe.selected;
                }
                None => hi = mid,
            }
        }
        (Some(pool[lo].id), best_sel)
    };
    note(first.sighting);

    let min_leading_penalty = first_item_index.map_or(0, |f| inst.item(f).penalty);
    let mut incumbent = evaluate(inst, &selected).expect("knapsack packing within capacity");
    if let Some(s) = sighting {
        if s.value > incumbent.value {
            // materialize: pack the leading item and fill with later items
            let lead = inst.item(s.lead);
            let rest: Vec<KpItem> = pool.iter().copied().filter(|it| it.id > s.lead).collect();
            let fill = s.value - lead.profit + lead.penalty;
            let fill = self::core::solve_reaching(&rest, capacity - lead.weight, None, fill, false)
                .expect("sighted packing is attainable");
            let mut set = fill.selected;
            set.push(s.lead);
            let sol = evaluate(inst, &set).expect("leading item fits");
            debug_assert!(sol.value >= s.value);
            if sol.value > incumbent.value {
                incumbent = sol;
            }
        }
    }
    if incumbent.value < 0 {
        incumbent = Solution::empty();
    }

    KpResult {
        value,
        selected,
        first_item_index,
        min_leading_penalty,
        incumbent_pkp: incumbent,
        max_states,
    }
}

/// Knapsack packing of items `j+1..n` filling `capacity`, with `j` added.
/// Used to recover the item set once the leading item of an optimum is known;
/// `fill`, when given, is the known optimum of the filling knapsack.
pub(crate) fn pack_with_leader(inst: &Instance, j: usize, capacity: i64, fill: Option<i64>) -> Vec<usize> {
    let rest = kp_items(inst, &(j + 1..inst.len()).collect::<Vec<_>>());
    let cap = capacity - inst.item(j).weight;
    let fill = match fill {
        Some(v) => self::core::solve_reaching(&rest, cap, None, v, true).expect("known fill value"),
        None => self::core::solve(&rest, cap, None),
    };
    let mut set = fill.selected;
    set.push(j);
    set.sort_unstable();
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(inst: &Instance) -> Vec<usize> {
        (0..inst.len()).collect()
    }

    #[test]
    fn worked_two_item() {
        let inst = Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap();
        let r = solve_kp_exact(&inst, &all(&inst), 7);
        assert_eq!(r.value, 10);
        assert_eq!(r.selected, vec![1]);
        assert_eq!(r.first_item_index, Some(1));
        assert_eq!(r.min_leading_penalty, 1);
        assert_eq!(r.incumbent_pkp.value, 9);
    }

    #[test]
    fn zero_capacity() {
        let inst = Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap();
        let r = solve_kp_exact(&inst, &all(&inst), 0);
        assert_eq!(r.value, 0);
        assert!(r.selected.is_empty());
        assert_eq!(r.first_item_index, None);
        assert_eq!(r.incumbent_pkp.value, 0);
    }

    #[test]
    fn three_item() {
        let inst = Instance::from_triples(&[(6, 4, 3), (5, 4, 5), (7, 6, 2)], 10).unwrap();
        let r = solve_kp_exact(&inst, &all(&inst), 10);
        assert_eq!(r.value, 13);
        assert_eq!(r.incumbent_pkp.value, 10);
        // canonical order: (5,4,5), (6,4,3), (7,6,2); the optimum {6,7} leads with index 1
        assert_eq!(r.first_item_index, Some(1));
        assert_eq!(r.min_leading_penalty, 3);
    }

    #[test]
    fn first_item_is_largest_possible() {
        // two optimal packings of value 10: {0} and {2}; the later leader wins
        let inst = Instance::from_triples(&[(10, 5, 9), (1, 5, 5), (10, 5, 1)], 5).unwrap();
        let r = solve_kp_exact(&inst, &all(&inst), 5);
        assert_eq!(r.value, 10);
        assert_eq!(r.first_item_index, Some(2));
        assert_eq!(r.selected, vec![2]);
        assert_eq!(r.incumbent_pkp.value, 9);
    }

    #[test]
    fn subset_only() {
        let inst = Instance::from_triples(&[(10, 5, 9), (1, 5, 5), (10, 5, 1)], 10).unwrap();
        let r = solve_kp_exact(&inst, &[0, 1], 10);
        assert_eq!(r.value, 11);
        assert_eq!(r.selected, vec![0, 1]);
    }
}
