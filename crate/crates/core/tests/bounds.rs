mod common;
#[path = "common/strategy.rs"]
mod strategy;

use common::{big, lp_at, lp_max_oracle, naive_pkp_j, naive_pkp_j_plus};
use num_rational::BigRational;
use pkp_core::lp::{
    bound_chain_check, bounds_pkp_j_lp, bounds_pkp_j_plus_lp, lp_profile, lp_value_at, solve_lp, BoundChain,
};
use pkp_core::Instance;
use proptest::prelude::*;

fn check_subproblem_bounds(inst: &Instance) -> Result<(), TestCaseError> {
    let plain = bounds_pkp_j_lp(inst);
    let plus = bounds_pkp_j_plus_lp(inst);
    prop_assert_eq!(plain.len(), inst.len());
    prop_assert_eq!(plus.len(), inst.len());
    for j in 0..inst.len() {
        prop_assert_eq!(plain[j].to_big(), naive_pkp_j(inst, j), "PKP_{} bound", j);
        prop_assert_eq!(plus[j].map(|v| v.to_big()), naive_pkp_j_plus(inst, j), "PKP_{}^+ bound", j);
        if let Some(p) = plus[j] {
            prop_assert!(p <= plain[j]);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_is_concave_with_few_segments(inst in strategy::instance(40)) {
        let prof = lp_profile(&inst);
        prop_assert!(prof.segments() <= 2 * inst.len().max(1));
        let slopes = prof.chord_slopes();
        for w in slopes.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        for (x, y) in &prof.breakpoints {
            prop_assert_eq!(y, &lp_at(&inst, x));
        }
    }

    #[test]
    fn lp_maximum_matches_oracle(inst in strategy::instance(40)) {
        let opt = solve_lp(&inst);
        prop_assert_eq!(&opt.max_value, &lp_max_oracle(&inst));
        prop_assert_eq!(lp_value_at(&inst, &opt.argmax_pi), opt.max_value.clone());
        prop_assert_eq!(&lp_profile(&inst).max_value, &opt.max_value);
    }

    #[test]
    fn lp_value_matches_greedy(inst in strategy::instance(25), num in 0i64..200, den in 1i64..7) {
        let pi = BigRational::new(num.into(), den.into());
        prop_assert_eq!(lp_value_at(&inst, &pi), lp_at(&inst, &pi));
    }

    #[test]
    fn subproblem_bounds_match_naive(inst in strategy::instance(60)) {
        check_subproblem_bounds(&inst)?;
    }

    #[test]
    fn subproblem_bounds_with_ties(inst in strategy::tied_instance(60)) {
        check_subproblem_bounds(&inst)?;
    }

    #[test]
    fn bound_chain_dominates_optimum(inst in strategy::instance(14)) {
        let chain = BoundChain::compute(&inst);
        prop_assert!(chain.holds(), "{:?}", chain);
        let z = common::enumerate_best(&inst);
        prop_assert!(big(z) <= chain.ub_sub_plus.to_big());
    }
}

#[test]
fn subproblem_bounds_on_generated_instances() {
    for inst in common::class_sweep(30, 1..=200, &[100, 1000], 11) {
        check_subproblem_bounds(&inst).unwrap();
    }
}

#[test]
fn bound_chain_on_larger_instances() {
    for inst in common::class_sweep(20, 500..=500, &[1000], 12) {
        bound_chain_check(&inst);
    }
}

#[test]
fn lp_on_generated_instances() {
    for inst in common::class_sweep(40, 1..=100, &[20, 100, 1000], 13) {
        let prof = lp_profile(&inst);
        assert!(prof.segments() <= 2 * inst.len());
        assert!(prof.is_concave());
        assert_eq!(solve_lp(&inst).max_value, lp_max_oracle(&inst));
    }
}
