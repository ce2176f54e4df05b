use std::time::{Duration, Instant};

use pkp_core::dp::{solve_dp1_with, DpBudget};
use pkp_core::Instance;

fn fastest_of(runs: usize, inst: &Instance) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            solve_dp1_with(inst, 0, 0, DpBudget::default()).unwrap();
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn table_time_grows_linearly_in_capacity() {
    let items: Vec<(i64, i64, i64)> = (0..120)
        .map(|k| (1000 + 37 * k % 501, 5000 + 7919 * k % 4000, k % 13))
        .collect();
    let mut times = Vec::new();
    for shift in 16..=18 {
        let inst = Instance::from_triples(&items, 1 << shift).unwrap();
        times.push(fastest_of(3, &inst).as_secs_f64());
    }
    for w in times.windows(2) {
        let ratio = w[1] / w[0];
        assert!((1.0..=4.0).contains(&ratio), "doubling c changed time by {ratio:.2}: {times:?}");
    }
}
