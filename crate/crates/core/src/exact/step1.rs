//! Preprocessing: knapsack solve, item discarding and penalty narrowing.

use crate::kp::solve_kp_exact;
use crate::lp::bounds_pkp_j_plus_lp;
use crate::model::{Instance, Solution};

/// Window of canonical indices whose `PKP_j^+` relaxation exceeds the
/// incumbent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenaltyInterval {
    pub l: usize,
    pub r: usize,
    /// `π_l`.
    pub pi_max: i64,
    /// `π_r`.
    pub pi_min: i64,
    pub empty: bool,
}

impl PenaltyInterval {
    fn empty() -> Self {
        PenaltyInterval {
            l: 0,
            r: 0,
            pi_max: 0,
            pi_min: 0,
            empty: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step1Outcome {
    /// The incumbent is optimal.
    Proven(Solution),
    /// Items `first..n` with a leading penalty of at least `pi_min` remain.
    Reduced { first: usize, pi_min: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step1 {
    pub incumbent: Solution,
    pub interval: PenaltyInterval,
    pub outcome: Step1Outcome,
    /// Index of the first item of the optimal knapsack packing with the
    /// smallest leading penalty.
    pub first_item: Option<usize>,
    /// The penalty-free knapsack optimum.
    pub kp_value: i64,
    pub states_max: usize,
}

pub fn step1(inst: &Instance) -> Step1 {
    let n = inst.len();
    let all: Vec<usize> = (0..n).collect();
    let kp = solve_kp_exact(inst, &all, inst.capacity());
    let mut incumbent = kp.incumbent_pkp.clone();
    let mut states_max = kp.max_states;
    let done = |incumbent: Solution, interval: PenaltyInterval, states_max: usize| Step1 {
        outcome: Step1Outcome::Proven(incumbent.clone().certified(true)),
        incumbent,
        interval,
        first_item: kp.first_item_index,
        kp_value: kp.value,
        states_max,
    };

    // with a zero knapsack optimum no selection has positive value
    let Some(f) = kp.first_item_index else {
        return done(incumbent, PenaltyInterval::empty(), states_max);
    };

    // a leader j <= f pays at least π_f on at most z(KP) of profit, which
    // the incumbent already matches
    let bounds = bounds_pkp_j_plus_lp(inst);
    let best = (f + 1..n)
        .filter_map(|j| bounds[j].map(|b| (b, j)))
        .fold(None, |acc: Option<(_, usize)>, (b, j)| match acc {
            Some((ab, _)) if ab >= b => acc,
            _ => Some((b, j)),
        });
    let Some((ub, k)) = best else {
        return done(incumbent, PenaltyInterval::empty(), states_max);
    };
    if !ub.exceeds(incumbent.value) {
        return done(incumbent, PenaltyInterval::empty(), states_max);
    }

    let rest: Vec<usize> = (k..n).collect();
    let again = solve_kp_exact(inst, &rest, inst.capacity());
    states_max = states_max.max(again.max_states);
    if again.incumbent_pkp.value > incumbent.value {
        incumbent = again.incumbent_pkp;
    }

    let z = incumbent.value;
    let beats = |j: &usize| bounds[*j].is_some_and(|b| b.exceeds(z));
    let l = (f + 1..n).find(beats);
    let r = (f + 1..n).rev().find(beats);
    let (Some(l), Some(r)) = (l, r) else {
        return done(incumbent, PenaltyInterval::empty(), states_max);
    };
    let interval = PenaltyInterval {
        l,
        r,
        pi_max: inst.item(l).penalty,
        pi_min: inst.item(r).penalty,
        empty: false,
    };
    Step1 {
        outcome: Step1Outcome::Reduced {
            first: l,
            pi_min: interval.pi_min,
        },
        incumbent,
        interval,
        first_item: kp.first_item_index,
        kp_value: kp.value,
        states_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instance_is_proven() {
        let inst = Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap();
        let s = step1(&inst);
        assert_eq!(s.kp_value, 10);
        assert_eq!(s.first_item, Some(1));
        assert_eq!(s.incumbent.value, 9);
        assert!(matches!(s.outcome, Step1Outcome::Proven(ref sol) if sol.value == 9));
    }

    #[test]
    fn zero_penalties() {
        let inst = Instance::from_triples(&[(10, 5, 0), (6, 4, 0), (5, 3, 0)], 7).unwrap();
        let s = step1(&inst);
        assert_eq!(s.incumbent.value, 11);
        assert!(matches!(s.outcome, Step1Outcome::Proven(_)));
    }

    #[test]
    fn reduced_window_shape() {
        // a heavy-penalty knapsack optimum leaves room for a cheaper leader
        let inst = Instance::from_triples(
            &[(20, 10, 15), (9, 5, 2), (9, 5, 2), (3, 2, 1), (2, 3, 0)],
            10,
        )
        .unwrap();
        let s = step1(&inst);
        if let Step1Outcome::Reduced { first, pi_min } = s.outcome {
            assert!(!s.interval.empty);
            assert_eq!(first, s.interval.l);
            assert_eq!(pi_min, inst.item(s.interval.r).penalty);
            assert!(s.interval.l > s.first_item.unwrap());
        }
        assert!(s.incumbent.value >= 16);
    }
}
