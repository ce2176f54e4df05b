//! Profit-scaling approximation scheme for the 0-1 knapsack.
//!
//! Profits are divided by `K = max(1, floor(δ·p_max/m))` (rounded down), with
//! `m` the number of items that fit, and an exact dynamic program over the
//! scaled profits keeps the Pareto frontier of `(scaled profit, weight)`
//! pairs. Rounding loses less than `K` per item, hence at most `δ·p_max`
//! overall, and `p_max` is itself a lower bound on the optimum.

use num_rational::Ratio;

use crate::model::Instance;

const ROOT: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Label {
    q: i64,
    weight: i64,
    node: u32,
}

/// Approximate knapsack over `items` (canonical indices): returns the true
/// profit of the packing found and the packing itself (ascending).
///
/// The value is at least `(1 - delta)` times the optimum.
///
/// # Panics
///
/// If `delta` is not in `(0, 1)`.
pub fn solve_kp_fptas(
    inst: &Instance,
    items: &[usize],
    capacity: i64,
    delta: Ratio<i64>,
) -> (i64, Vec<usize>) {
    assert!(
        delta > Ratio::from_integer(0) && delta < Ratio::from_integer(1),
        "delta must lie in (0, 1)"
    );
    let fit: Vec<usize> = items
        .iter()
        .copied()
        .filter(|&j| inst.item(j).weight <= capacity && inst.item(j).profit > 0)
        .collect();
    if fit.is_empty() {
        return (0, Vec::new());
    }
    let p_max = fit.iter().map(|&j| inst.item(j).profit).max().unwrap_or(0);
    let scaled = (Ratio::from_integer(p_max as i128)
        * Ratio::new(*delta.numer() as i128, *delta.denom() as i128)
        / Ratio::from_integer(fit.len() as i128))
    .floor()
    .to_integer();
    let k = scaled.max(1) as i64;

    // arena of (parent, item) links; a label points at its newest link
    let mut links: Vec<(u32, u32)> = Vec::new();
    let mut front = vec![Label {
        q: 0,
        weight: 0,
        node: ROOT,
    }];
    let mut next: Vec<Label> = Vec::new();
    for &j in &fit {
        let it = inst.item(j);
        let q = it.profit / k;
        next.clear();
        let mut best_q = i64::MIN;
        let (mut a, mut b) = (0usize, 0usize);
        while a < front.len() || b < front.len() {
            let shifted = (b < front.len()).then(|| {
                let s = front[b];
                (s.weight + it.weight, s.q + q)
            });
            let take_old = match shifted {
                None => true,
                Some((w, sq)) => {
                    a < front.len()
                        && (front[a].weight < w || (front[a].weight == w && front[a].q >= sq))
                }
            };
            let label = if take_old {
                a += 1;
                front[a - 1]
            } else {
                b += 1;
                let (w, sq) = shifted.unwrap();
                if w > capacity {
                    // shifted labels only get heavier from here on
                    b = front.len();
                    continue;
                }
                if sq <= best_q {
                    continue;
                }
                links.push((front[b - 1].node, j as u32));
                Label {
                    q: sq,
                    weight: w,
                    node: (links.len() - 1) as u32,
                }
            };
            if label.q > best_q {
                best_q = label.q;
                if next.last().is_some_and(|l| l.weight == label.weight) {
                    next.pop();
                }
                next.push(label);
            }
        }
        std::mem::swap(&mut front, &mut next);
    }

    let best = front.last().copied().expect("frontier never empty");
    let mut selected = Vec::new();
    let mut node = best.node;
    while node != ROOT {
        let (parent, j) = links[node as usize];
        selected.push(j as usize);
        node = parent;
    }
    selected.sort_unstable();
    let value = selected.iter().map(|&j| inst.item(j).profit).sum();
    (value, selected)
}
