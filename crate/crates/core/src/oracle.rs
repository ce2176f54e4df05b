//! Exhaustive enumeration for tiny instances.

use crate::error::{PkpError, Result};
use crate::model::{Instance, Solution};

pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Optimum by enumerating every subset in Gray-code order.
///
/// Ties are resolved towards the smaller leading index and then the
/// lexicographically smaller index set. The result is certified.
pub fn brute_force(inst: &Instance) -> Result<Solution> {
    let n = inst.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(PkpError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let items = inst.items();
    let cap = inst.capacity();
    let (mut weight, mut profit) = (0i64, 0i64);
    let mut mask: u32 = 0;
    let mut best = (0i64, 0u32);
    for g in 1u32..(1u32 << n) {
        let bit = g.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask >> bit & 1 == 1 {
            weight += items[bit].weight;
            profit += items[bit].profit;
        } else {
            weight -= items[bit].weight;
            profit -= items[bit].profit;
        }
        if weight > cap {
            continue;
        }
        // canonical order puts the leading item at the lowest set bit
        let value = profit - items[mask.trailing_zeros() as usize].penalty;
        if value > best.0 || (value == best.0 && better_tie(mask, best.1)) {
            best = (value, mask);
        }
    }
    let selected: Vec<usize> = (0..n).filter(|&j| best.1 >> j & 1 == 1).collect();
    Ok(Solution {
        value: best.0,
        leading_index: selected.first().copied(),
        selected,
        certified_optimal: true,
    })
}

/// The empty set wins any tie it is part of; otherwise the smaller leading
/// index, then the lexicographically smaller ascending index list.
fn better_tie(a: u32, b: u32) -> bool {
    if a == 0 || b == 0 {
        return a == 0 && b != 0;
    }
    let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
    if la != lb {
        return la < lb;
    }
    // at the first differing position the set holding it is smaller, unless
    // the other set has already ended there
    let k = (a ^ b).trailing_zeros();
    let at_or_above = !((1u32 << k) - 1);
    if a >> k & 1 == 1 {
        b & at_or_above != 0
    } else {
        a & at_or_above == 0
    }
}
