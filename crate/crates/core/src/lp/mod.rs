//! Linear-relaxation bounds.
//!
//! Two families of bounds live here:
//!
//! * the parametric relaxation `z^LP(Π)`, where every item is capped at
//!   `min(1, Π/π_j)` and `Π` is subtracted; its maximum over `Π ≥ 0` is the
//!   relaxation value `z^LP` (see [`parametric`]);
//! * the leading-item subproblem bounds, one Dantzig bound per item `j` with
//!   `Π = π_j` fixed (see [`subproblems`]).
//!
//! Subproblem bounds are exact fractions with a denominator no larger than
//! one item weight and are kept in [`LpValue`]. Points of the parametric
//! curve can have denominators that are products of many penalties, so they
//! use arbitrary-precision [`BigRational`].

pub mod parametric;
pub mod subproblems;

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};

use crate::model::Instance;

pub use parametric::{lp_profile, lp_value_at, solve_lp, LpOptimum, LpProfile};
pub use subproblems::{bounds_pkp_j_lp, bounds_pkp_j_plus_lp};

/// An exact, reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LpValue(Ratio<i128>);

impl LpValue {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        LpValue(Ratio::new(num, den))
    }

    pub fn from_int(v: i64) -> Self {
        LpValue(Ratio::from_integer(v as i128))
    }

    /// `profit + residual * p / w`, the value of a greedy fill that packs
    /// `profit` fully and a fraction of an item `(p, w)`.
    pub fn dantzig(profit: i64, residual: i64, p: i64, w: i64) -> Self {
        debug_assert!(w > 0);
        LpValue::new(profit as i128 * w as i128 + residual as i128 * p as i128, w as i128)
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    /// `self > z` for an integer `z`.
    pub fn exceeds(&self, z: i64) -> bool {
        *self > LpValue::from_int(z)
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }
}

impl Add<i64> for LpValue {
    type Output = LpValue;
    fn add(self, rhs: i64) -> LpValue {
        LpValue(self.0 + Ratio::from_integer(rhs as i128))
    }
}

impl Sub<i64> for LpValue {
    type Output = LpValue;
    fn sub(self, rhs: i64) -> LpValue {
        LpValue(self.0 - Ratio::from_integer(rhs as i128))
    }
}

impl fmt::Display for LpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Dantzig bound of a 0-1 knapsack: fill greedily along `items` (which must
/// already be in non-increasing efficiency order) and take a fraction of the
/// first item that does not fit.
pub fn dantzig_bound<I>(items: I, capacity: i64) -> LpValue
where
    I: IntoIterator<Item = (i64, i64)>,
{
    if capacity < 0 {
        panic!("dantzig_bound called with negative capacity {capacity}");
    }
    let mut residual = capacity;
    let mut profit = 0i64;
    for (p, w) in items {
        if w <= residual {
            residual -= w;
            profit += p;
        } else {
            return LpValue::dantzig(profit, residual, p, w);
        }
    }
    LpValue::from_int(profit)
}

/// The three global upper bounds on the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundChain {
    /// `max(0, max_j z(PKP_j^{+LP}))`.
    pub ub_sub_plus: LpValue,
    /// `max(0, max_j z(PKP_j^{LP}))`.
    pub ub_sub: LpValue,
    /// `max_{Π ≥ 0} z^LP(Π)`.
    pub z_lp: BigRational,
}

impl BoundChain {
    pub fn compute(inst: &Instance) -> Self {
        let zero = LpValue::from_int(0);
        let ub_sub_plus = bounds_pkp_j_plus_lp(inst)
            .into_iter()
            .flatten()
            .fold(zero, LpValue::max);
        let ub_sub = bounds_pkp_j_lp(inst).into_iter().fold(zero, LpValue::max);
        let z_lp = solve_lp(inst).max_value;
        BoundChain {
            ub_sub_plus,
            ub_sub,
            z_lp,
        }
    }

    pub fn holds(&self) -> bool {
        self.ub_sub_plus <= self.ub_sub && self.ub_sub.to_big() <= self.z_lp
    }
}

/// Computes the bound chain and asserts `UB_sub^+ <= UB_sub <= z^LP`.
///
/// # Panics
///
/// If the chain is violated, which can only happen through a bug in one of
/// the bound routines.
pub fn bound_chain_check(inst: &Instance) -> BoundChain {
    let chain = BoundChain::compute(inst);
    assert!(
        chain.holds(),
        "bound chain violated: {} <= {} <= {} fails",
        chain.ub_sub_plus,
        chain.ub_sub,
        chain.z_lp
    );
    chain
}
