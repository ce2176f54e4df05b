//! The relaxation with a free penalty variable.
//!
//! For a fixed `Π` every item is capped at `min(1, Π/π_j)` (items with zero
//! penalty are always capped at 1) and the relaxation is a fractional
//! knapsack. As a function of `Π` the value is concave and piecewise linear,
//! so its maximum is found by a binary search over the sorted penalties on
//! the sign of the right derivative, followed by one sweep over candidate
//! split items inside the bracketing penalty interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::model::Instance;

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Distinct penalty values together with 0, ascending.
fn penalty_grid(inst: &Instance) -> Vec<i64> {
    let mut v: Vec<i64> = inst.items().iter().map(|it| it.penalty).collect();
    v.push(0);
    v.sort_unstable();
    v.dedup();
    v
}

/// Value of the relaxation at a fixed `Π = pi`.
pub fn lp_value_at(inst: &Instance, pi: &BigRational) -> BigRational {
    value_at_sorted(inst, &inst.efficiency_order(), pi)
}

fn value_at_sorted(inst: &Instance, order: &[usize], pi: &BigRational) -> BigRational {
    assert!(!pi.is_negative(), "penalty level must be non-negative");
    let mut residual = big(inst.capacity());
    let mut value = -pi.clone();
    for &j in order {
        let it = inst.item(j);
        let w = big(it.weight);
        let p = big(it.profit);
        let cap = if it.penalty == 0 || big(it.penalty) <= *pi {
            BigRational::one()
        } else {
            pi / big(it.penalty)
        };
        let full = &w * &cap;
        if full <= residual {
            residual -= &full;
            value += &p * &cap;
        } else {
            value += &p * &residual / &w;
            break;
        }
    }
    value
}

/// `a + b·ε` for an infinitesimal `ε > 0`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Dual {
    a: BigRational,
    b: BigRational,
}

/// Value at `pi` and the slope of the curve immediately to the right of it.
fn value_and_right_slope(
    inst: &Instance,
    order: &[usize],
    pi: &BigRational,
) -> (BigRational, BigRational) {
    let mut residual = Dual {
        a: big(inst.capacity()),
        b: BigRational::zero(),
    };
    let mut value = Dual {
        a: -pi.clone(),
        b: -BigRational::one(),
    };
    for &j in order {
        let it = inst.item(j);
        let (w, p) = (big(it.weight), big(it.profit));
        // Items with penalty <= pi are uncapped at pi + ε.
        let cap = if it.penalty == 0 || big(it.penalty) <= *pi {
            Dual {
                a: BigRational::one(),
                b: BigRational::zero(),
            }
        } else {
            let pen = big(it.penalty);
            Dual {
                a: pi / &pen,
                b: BigRational::one() / pen,
            }
        };
        let full = Dual {
            a: &w * &cap.a,
            b: &w * &cap.b,
        };
        if full <= residual {
            residual.a -= &full.a;
            residual.b -= &full.b;
            value.a += &p * &cap.a;
            value.b += &p * &cap.b;
        } else {
            value.a += &p * &residual.a / &w;
            value.b += &p * &residual.b / &w;
            break;
        }
    }
    (value.a, value.b)
}

/// A linear piece `slope·Π + intercept` valid on `[lo, hi]`.
#[derive(Clone, Debug)]
struct Piece {
    lo: BigRational,
    hi: BigRational,
    slope: BigRational,
    intercept: BigRational,
}

impl Piece {
    fn at(&self, pi: &BigRational) -> BigRational {
        &self.slope * pi + &self.intercept
    }

    /// Endpoint maximizing the linear function.
    fn best(&self) -> (BigRational, BigRational) {
        let pi = if self.slope.is_negative() {
            self.lo.clone()
        } else {
            self.hi.clone()
        };
        let v = self.at(&pi);
        (pi, v)
    }
}

/// Candidate split-item sweep on `[lo, hi]`, where `lo` and `hi` are
/// consecutive values of the penalty grid. Items with `π_j <= lo` are
/// uncapped, all others are capped at `Π/π_j`. For every candidate split item
/// the prefix before it contributes weight `γ1·Π + γ2` and profit
/// `θ1·Π + θ2`; the candidate is admissible on the set of `Π` where the
/// prefix leaves room (`γ1·Π + γ2 < c`) and the remaining room does not
/// exceed the candidate's own cap. Returns every admissible linear piece,
/// closed at its endpoints.
fn split_item_pieces(
    inst: &Instance,
    order: &[usize],
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<Piece> {
    let c = big(inst.capacity());
    let mut gamma1 = BigRational::zero();
    let mut gamma2 = BigRational::zero();
    let mut theta1 = BigRational::zero();
    let mut theta2 = BigRational::zero();
    let mut pieces = Vec::new();

    let capped = |penalty: i64| penalty > 0 && big(penalty) > *lo;

    for &j in order {
        let it = inst.item(j);
        let (w, p) = (big(it.weight), big(it.profit));
        let eff = &p / &w;

        let mut lower = lo.clone();
        let mut upper = hi.clone();
        let mut empty = false;

        // Closure of the room constraint: γ1·Π + γ2 <= c.
        if gamma1.is_positive() {
            let bound = (&c - &gamma2) / &gamma1;
            if bound < upper {
                upper = bound;
            }
        } else if gamma2 >= c {
            empty = true;
        }
        // Remaining room must fit within the candidate's cap.
        if capped(it.penalty) {
            let slope = &gamma1 + &w / big(it.penalty);
            let bound = (&c - &gamma2) / slope;
            if bound > lower {
                lower = bound;
            }
        } else {
            let rhs = &c - &gamma2 - &w;
            if gamma1.is_positive() {
                let bound = rhs / &gamma1;
                if bound > lower {
                    lower = bound;
                }
            } else if rhs.is_positive() {
                empty = true;
            }
        }
        // Strict room requirement at the left end of the closed interval.
        if !empty && lower <= upper && &gamma1 * &lower + &gamma2 < c {
            pieces.push(Piece {
                slope: &theta1 - &eff * &gamma1 - BigRational::one(),
                intercept: &theta2 + &eff * (&c - &gamma2),
                lo: lower,
                hi: upper,
            });
        }

        if capped(it.penalty) {
            let pen = big(it.penalty);
            gamma1 += &w / &pen;
            theta1 += &p / &pen;
        } else {
            gamma2 += &w;
            theta2 += &p;
        }
    }

    // Everything fits: no split item.
    let mut upper = hi.clone();
    let mut empty = false;
    if gamma1.is_positive() {
        let bound = (&c - &gamma2) / &gamma1;
        if bound < upper {
            upper = bound;
        }
    } else if gamma2 > c {
        empty = true;
    }
    if !empty && *lo <= upper {
        pieces.push(Piece {
            slope: &theta1 - BigRational::one(),
            intercept: theta2,
            lo: lo.clone(),
            hi: upper,
        });
    }
    pieces
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOptimum {
    /// A maximizer `Π^LP` (the curve may have a flat top).
    pub argmax_pi: BigRational,
    pub max_value: BigRational,
}

/// Maximizes the relaxation over `Π >= 0` in `O(n log n)` rational steps.
pub fn solve_lp(inst: &Instance) -> LpOptimum {
    if inst.is_empty() {
        return LpOptimum {
            argmax_pi: BigRational::zero(),
            max_value: BigRational::zero(),
        };
    }
    let order = inst.efficiency_order();
    let grid: Vec<BigRational> = penalty_grid(inst).into_iter().map(big).collect();
    let rising = |pi: &BigRational| value_and_right_slope(inst, &order, pi).1.is_positive();

    if !rising(&grid[0]) {
        let v = value_at_sorted(inst, &order, &grid[0]);
        return LpOptimum {
            argmax_pi: grid[0].clone(),
            max_value: v,
        };
    }
    // Largest grid index with a positive right slope; the top of the grid
    // always has slope -1.
    let (mut good, mut bad) = (0usize, grid.len() - 1);
    while bad - good > 1 {
        let mid = (good + bad) / 2;
        if rising(&grid[mid]) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let pieces = split_item_pieces(inst, &order, &grid[good], &grid[bad]);
    let (argmax_pi, max_value) = pieces
        .iter()
        .map(Piece::best)
        .max_by(|a, b| a.1.cmp(&b.1))
        .expect("the bracketing interval is covered by at least one piece");
    LpOptimum {
        argmax_pi,
        max_value,
    }
}

/// The whole curve on `[0, π_max]` as a list of breakpoints; collinear
/// neighbours are merged so consecutive points delimit maximal linear
/// segments.
#[derive(Debug, Clone)]
pub struct LpProfile {
    pub breakpoints: Vec<(BigRational, BigRational)>,
    pub argmax_pi: BigRational,
    pub max_value: BigRational,
}

impl LpProfile {
    pub fn segments(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    pub fn chord_slopes(&self) -> Vec<BigRational> {
        self.breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Chord slopes are non-increasing from left to right.
    pub fn is_concave(&self) -> bool {
        self.chord_slopes().windows(2).all(|s| s[0] >= s[1])
    }
}

/// Builds the full curve by running the split-item sweep on every penalty
/// interval. Costs `O(n^2)` rational operations; intended for inspection and
/// testing rather than for solving.
pub fn lp_profile(inst: &Instance) -> LpProfile {
    let order = inst.efficiency_order();
    let grid: Vec<BigRational> = penalty_grid(inst).into_iter().map(big).collect();
    let mut xs: Vec<BigRational> = grid.clone();
    for pair in grid.windows(2) {
        for piece in split_item_pieces(inst, &order, &pair[0], &pair[1]) {
            xs.push(piece.lo);
            xs.push(piece.hi);
        }
    }
    xs.sort();
    xs.dedup();
    let mut points: Vec<(BigRational, BigRational)> = Vec::with_capacity(xs.len());
    for x in xs {
        let y = value_at_sorted(inst, &order, &x);
        // Drop the middle point of three collinear ones.
        while points.len() >= 2 {
            let (x0, y0) = &points[points.len() - 2];
            let (x1, y1) = &points[points.len() - 1];
            if (y1 - y0) * (&x - x1) == (&y - y1) * (x1 - x0) {
                points.pop();
            } else {
                break;
            }
        }
        points.push((x, y));
    }
    let (argmax_pi, max_value) = points
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .cloned()
        .unwrap_or((BigRational::zero(), BigRational::zero()));
    LpProfile {
        breakpoints: points,
        argmax_pi,
        max_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_item() -> Instance {
        Instance::from_triples(&[(10, 5, 1), (6, 4, 2)], 7).unwrap()
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn value_at_points() {
        let inst = two_item();
        assert_eq!(lp_value_at(&inst, &big(1)), big(12));
        assert_eq!(lp_value_at(&inst, &big(2)), big(11));
        assert_eq!(lp_value_at(&inst, &big(0)), big(0));
        assert_eq!(lp_value_at(&inst, &frac(1, 2)), big(6));
        // beyond the largest penalty: Dantzig bound 13 minus Π
        assert_eq!(lp_value_at(&inst, &big(5)), big(8));
    }

    #[test]
    fn zero_level_uses_zero_penalty_items_only() {
        let inst = Instance::from_triples(&[(10, 5, 0), (6, 4, 3), (4, 4, 0)], 7).unwrap();
        // 10 + 2/4 * 4
        assert_eq!(lp_value_at(&inst, &big(0)), big(12));
    }

    #[test]
    fn right_slope_signs() {
        let inst = two_item();
        let order = inst.efficiency_order();
        let (v, s) = value_and_right_slope(&inst, &order, &big(0));
        assert_eq!(v, big(0));
        assert!(s.is_positive());
        let (_, s) = value_and_right_slope(&inst, &order, &big(1));
        assert!(s.is_negative());
        let (_, s) = value_and_right_slope(&inst, &order, &big(2));
        assert_eq!(s, big(-1));
    }

    #[test]
    fn solve_two_item() {
        let opt = solve_lp(&two_item());
        assert_eq!(opt.max_value, big(12));
        assert_eq!(opt.argmax_pi, big(1));
    }

    #[test]
    fn zero_penalties_give_dantzig() {
        let inst = Instance::from_triples(&[(10, 5, 0), (6, 4, 0), (3, 3, 0)], 7).unwrap();
        assert_eq!(solve_lp(&inst).max_value, big(13));
        let profile = lp_profile(&inst);
        assert_eq!(profile.segments(), 0);
        assert_eq!(profile.max_value, big(13));
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::from_triples(&[], 4).unwrap();
        assert_eq!(solve_lp(&inst).max_value, big(0));
    }

    #[test]
    fn profile_of_two_item() {
        let profile = lp_profile(&two_item());
        assert!(profile.is_concave());
        assert!(profile.segments() <= 4);
        assert_eq!(profile.max_value, big(12));
        assert_eq!(profile.argmax_pi, big(1));
    }
}
