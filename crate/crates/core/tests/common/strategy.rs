#![allow(dead_code)]

use pkp_core::Instance;
use proptest::prelude::*;

/// Small instances with arbitrary integer data, including zero profits,
/// zero penalties, ties and items heavier than the knapsack.
pub fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec((0i64..=60, 1i64..=40, 0i64..=50), 0..=max_n).prop_flat_map(|items| {
        let total: i64 = items.iter().map(|t| t.1).sum();
        (Just(items), 0..=total + 5)
    })
    .prop_map(|(items, c)| Instance::from_triples(&items, c).expect("valid data"))
}

/// Instances with few distinct penalties, which stresses tie handling in
/// canonical order.
pub fn tied_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec((1i64..=30, 1i64..=20, prop::sample::select(vec![0i64, 5, 9])), 1..=max_n)
        .prop_flat_map(|items| {
            let total: i64 = items.iter().map(|t| t.1).sum();
            (Just(items), 1..=total)
        })
        .prop_map(|(items, c)| Instance::from_triples(&items, c).expect("valid data"))
}
