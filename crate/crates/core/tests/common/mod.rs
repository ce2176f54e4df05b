//! Independent reference computations for the integration tests.
//!
//! Nothing here calls into the solvers: objectives are recomputed from raw
//! item data, relaxations by a plain greedy over exact rationals.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use pkp_core::generator::{generate, GenSpec, PenaltyClass, ProfitClass, WeightType};
use pkp_core::Instance;
use rand::{Rng, SeedableRng};

pub fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn taus() -> [Ratio<i64>; 3] {
    [Ratio::new(1, 2), Ratio::new(1, 10), Ratio::new(1, 100)]
}

/// All 2 x 8 x 7 x 3 generator class combinations.
pub fn class_grid() -> Vec<(WeightType, PenaltyClass, ProfitClass, Ratio<i64>)> {
    let mut v = Vec::new();
    for w in WeightType::ALL {
        for pi in PenaltyClass::all() {
            for p in ProfitClass::all() {
                for tau in taus() {
                    v.push((w, pi, p, tau));
                }
            }
        }
    }
    v
}

pub fn instance_for(
    (weight_type, penalty_class, profit_class, tau): (WeightType, PenaltyClass, ProfitClass, Ratio<i64>),
    n: usize,
    range: i64,
    seed: u64,
) -> Instance {
    generate(&GenSpec {
        n,
        range,
        weight_type,
        penalty_class,
        profit_class,
        tau,
        seed,
    })
    .expect("valid generator spec")
}

/// `count` generated instances cycling through every class combination,
/// with `n` drawn from `n_range` and `R` from `ranges`.
pub fn class_sweep(
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    ranges: &[i64],
    seed: u64,
) -> Vec<Instance> {
    let grid = class_grid();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(n_range.clone());
            let r = ranges[rng.gen_range(0..ranges.len())];
            instance_for(grid[k % grid.len()], n, r, rng.gen())
        })
        .collect()
}

/// Objective of a subset given as a bit mask over canonical indices,
/// `None` if it does not fit.
pub fn objective(inst: &Instance, mask: u64) -> Option<i64> {
    let (mut p, mut w, mut pi) = (0i64, 0i64, 0i64);
    for (j, it) in inst.items().iter().enumerate() {
        if mask >> j & 1 == 1 {
            p += it.profit;
            w += it.weight;
            pi = pi.max(it.penalty);
        }
    }
    (w <= inst.capacity()).then_some(p - pi)
}

/// Optimum by full enumeration, for `n <= 24`.
pub fn enumerate_best(inst: &Instance) -> i64 {
    assert!(inst.len() <= 24);
    (0u64..1 << inst.len())
        .filter_map(|m| objective(inst, m))
        .max()
        .unwrap_or(0)
}

/// Best objective over subsets that contain `j` and otherwise only items
/// after `j` in canonical order; `None` if `j` alone does not fit.
pub fn enumerate_best_leading(inst: &Instance, j: usize) -> Option<i64> {
    let n = inst.len();
    let rest = n - j - 1;
    (0u64..1 << rest)
        .filter_map(|m| objective(inst, (m << (j + 1)) | 1 << j))
        .max()
}

/// Plain 0-1 knapsack optimum by a dense table, for small capacities.
pub fn knapsack_table(items: &[(i64, i64)], capacity: i64) -> i64 {
    let cap = capacity.max(0) as usize;
    let mut row = vec![0i64; cap + 1];
    for &(p, w) in items {
        let w = w as usize;
        for d in (w..=cap).rev() {
            row[d] = row[d].max(row[d - w] + p);
        }
    }
    row[cap]
}

/// Fractional knapsack over `(profit, weight)` pairs with arbitrary
/// rational weights and profits.
pub fn fractional(items: &[(BigRational, BigRational)], capacity: &BigRational) -> BigRational {
    let mut v: Vec<&(BigRational, BigRational)> = items.iter().filter(|(_, w)| w.is_positive()).collect();
    v.sort_by(|a, b| (&b.0 * &a.1).cmp(&(&a.0 * &b.1)));
    let mut residual = capacity.clone();
    let mut value = BigRational::zero();
    for (p, w) in v {
        if *w <= residual {
            value += p;
            residual -= w;
        } else {
            value += p * &residual / w;
            break;
        }
    }
    value
}

fn pairs(inst: &Instance, keep: impl Fn(usize) -> bool) -> Vec<(BigRational, BigRational)> {
    (0..inst.len())
        .filter(|&k| keep(k))
        .map(|k| (big(inst.item(k).profit), big(inst.item(k).weight)))
        .collect()
}

/// `z(PKP_j^{LP})`: items `j..n`, penalty `π_j`.
pub fn naive_pkp_j(inst: &Instance, j: usize) -> BigRational {
    fractional(&pairs(inst, |k| k >= j), &big(inst.capacity())) - big(inst.item(j).penalty)
}

/// `z(PKP_j^{+LP})`: item `j` packed, items `j+1..n` fill the rest.
pub fn naive_pkp_j_plus(inst: &Instance, j: usize) -> Option<BigRational> {
    let it = inst.item(j);
    if it.weight > inst.capacity() {
        return None;
    }
    let fill = fractional(&pairs(inst, |k| k > j), &big(inst.capacity() - it.weight));
    Some(fill + big(it.profit) - big(it.penalty))
}

/// Relaxation value at penalty level `pi`: each item is available up to the
/// fraction `min(1, pi / π_j)`.
pub fn lp_at(inst: &Instance, pi: &BigRational) -> BigRational {
    let items: Vec<(BigRational, BigRational)> = inst
        .items()
        .iter()
        .map(|it| {
            let cap = if it.penalty == 0 {
                BigRational::one()
            } else {
                (pi / big(it.penalty)).min(BigRational::one())
            };
            (big(it.profit) * &cap, big(it.weight) * cap)
        })
        .collect();
    fractional(&items, &big(inst.capacity())) - pi
}

/// Maximum of the relaxation over `Π >= 0`, evaluated at every penalty
/// value and at every level where a prefix of the efficiency order exactly
/// fills the knapsack.
pub fn lp_max_oracle(inst: &Instance) -> BigRational {
    let mut grid: Vec<i64> = inst.items().iter().map(|it| it.penalty).collect();
    grid.push(0);
    grid.sort_unstable();
    grid.dedup();
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (inst.item(a), inst.item(b));
        (y.profit as i128 * x.weight as i128).cmp(&(x.profit as i128 * y.weight as i128))
    });
    let c = big(inst.capacity());
    let mut candidates: Vec<BigRational> = grid.iter().map(|&g| big(g)).collect();
    for pair in grid.windows(2) {
        let (lo, hi) = (big(pair[0]), big(pair[1]));
        // on (lo, hi) every capped weight is a + b * Π
        let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
        for &k in &order {
            let it = inst.item(k);
            if it.penalty == 0 || it.penalty <= pair[0] {
                a += big(it.weight);
            } else {
                b += big(it.weight) / big(it.penalty);
            }
            if !b.is_zero() {
                let root = (&c - &a) / &b;
                if root > lo && root < hi {
                    candidates.push(root);
                }
            }
        }
    }
    candidates
        .iter()
        .map(|pi| lp_at(inst, pi))
        .max()
        .unwrap_or_else(BigRational::zero)
}
