mod common;
#[path = "common/strategy.rs"]
mod strategy;

use pkp_core::generator::{generate, GenSpec, Correlation, PenaltyClass, ProfitClass, WeightType};
use pkp_core::{canonicalize, evaluate, Instance};
use proptest::prelude::*;

fn multiset(inst: &Instance) -> Vec<(i64, i64, i64, usize)> {
    let mut v: Vec<_> = inst
        .items()
        .iter()
        .map(|it| (it.profit, it.weight, it.penalty, it.original_index))
        .collect();
    v.sort_unstable();
    v
}

proptest! {
    #[test]
    fn canonicalize_is_an_idempotent_permutation(inst in strategy::instance(20)) {
        let again = canonicalize(inst.items().to_vec(), inst.capacity()).unwrap();
        prop_assert_eq!(again.items(), inst.items());

        let mut shuffled = inst.items().to_vec();
        shuffled.reverse();
        let from_shuffled = canonicalize(shuffled, inst.capacity()).unwrap();
        prop_assert_eq!(from_shuffled.items(), inst.items());
        prop_assert_eq!(multiset(&from_shuffled), multiset(&inst));

        for pair in inst.items().windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert!(
                (a.penalty, a.weight, std::cmp::Reverse(a.original_index))
                    > (b.penalty, b.weight, std::cmp::Reverse(b.original_index))
            );
        }
    }

    #[test]
    fn evaluate_matches_recomputed_objective(inst in strategy::instance(12)) {
        for mask in 0u64..1 << inst.len() {
            let sel: Vec<usize> = (0..inst.len()).filter(|j| mask >> j & 1 == 1).collect();
            match (evaluate(&inst, &sel), common::objective(&inst, mask)) {
                (Ok(sol), Some(v)) => {
                    prop_assert_eq!(sol.value, v);
                    prop_assert_eq!(sol.leading_index, sel.first().copied());
                }
                (Err(_), None) => {}
                (got, want) => prop_assert!(false, "evaluate {:?} vs {:?}", got, want),
            }
        }
    }

    #[test]
    fn text_round_trip(inst in strategy::instance(30)) {
        let back = Instance::read_text(inst.to_text().as_bytes()).unwrap();
        prop_assert_eq!(back.items(), inst.items());
        prop_assert_eq!(back.capacity(), inst.capacity());
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), k in 0usize..336) {
        let cls = common::class_grid()[k];
        let a = common::instance_for(cls, 40, 100, seed);
        let b = common::instance_for(cls, 40, 100, seed);
        prop_assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn generated_items_follow_their_class(seed in any::<u64>(), k in 0usize..336, r in 10i64..2000) {
        let (wt, pc, qc, tau) = common::class_grid()[k];
        let inst = common::instance_for((wt, pc, qc, tau), 60, r, seed);
        for it in inst.items() {
            let w = it.weight;
            prop_assert!(w >= 1 && w <= r);
            if wt == WeightType::A2 {
                prop_assert!(w >= r / 2);
            }
            match pc {
                PenaltyClass::ConstantPerimeter => prop_assert_eq!(it.penalty, r - w + 1),
                PenaltyClass::ConstantArea => prop_assert_eq!(it.penalty, r / w),
                PenaltyClass::Classic(Correlation::SubsetSum) => prop_assert_eq!(it.penalty, w),
                PenaltyClass::Classic(Correlation::Strong) => prop_assert_eq!(it.penalty, w + r / 10),
                _ => {}
            }
            match qc {
                ProfitClass::Area => prop_assert_eq!(it.profit, it.penalty * w),
                ProfitClass::Classic(Correlation::SubsetSum) => prop_assert_eq!(it.profit, w),
                ProfitClass::Classic(Correlation::Strong) => prop_assert_eq!(it.profit, w + r / 10),
                _ => {}
            }
        }
    }
}

#[test]
fn capacity_follows_tau() {
    for (tau, expect_den) in [(num_rational::Ratio::new(1, 2), 2), (num_rational::Ratio::new(1, 10), 10)] {
        let inst = generate(&GenSpec {
            n: 200,
            range: 1000,
            weight_type: WeightType::A1,
            penalty_class: PenaltyClass::ConstantArea,
            profit_class: ProfitClass::Area,
            tau,
            seed: 3,
        })
        .unwrap();
        assert_eq!(inst.capacity(), inst.total_weight() / expect_den);
    }
}
