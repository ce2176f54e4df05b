//! Benchmark instance generator.
//!
//! Weights are drawn first, then the penalty and the profit of each item are
//! derived from its weight according to the selected correlation class. All
//! randomness comes from [`ChaCha8Rng`] seeded with `seed_from_u64`, and
//! integer draws use `rand`'s uniform range sampling, so a given
//! [`GenSpec`] produces the same instance on every platform. Per item the
//! draw order is: weight, penalty, profit.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PkpError, Result};
use crate::model::{canonicalize, Instance, Item};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightType {
    /// Uniform in `[1, R]`.
    A1,
    /// `R/2 + v` with `v` uniform in `[0, R/2]`.
    A2,
}

/// Correlation of a value (penalty or profit) with the item weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Correlation {
    Uncorrelated,
    Weak,
    Strong,
    InverseStrong,
    AlmostStrong,
    SubsetSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PenaltyClass {
    Classic(Correlation),
    /// `R - w + 1`.
    ConstantPerimeter,
    /// `floor(R / w)`.
    ConstantArea,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfitClass {
    Classic(Correlation),
    /// `penalty * weight`.
    Area,
}

const CORRELATIONS: [Correlation; 6] = [
    Correlation::Uncorrelated,
    Correlation::Weak,
    Correlation::Strong,
    Correlation::InverseStrong,
    Correlation::AlmostStrong,
    Correlation::SubsetSum,
];

impl WeightType {
    pub const ALL: [WeightType; 2] = [WeightType::A1, WeightType::A2];
}

impl PenaltyClass {
    pub fn all() -> Vec<PenaltyClass> {
        let mut v: Vec<_> = CORRELATIONS.iter().map(|&c| PenaltyClass::Classic(c)).collect();
        v.push(PenaltyClass::ConstantPerimeter);
        v.push(PenaltyClass::ConstantArea);
        v
    }

    /// 1-based class number (`pi1` .. `pi8`).
    pub fn number(self) -> usize {
        match self {
            PenaltyClass::Classic(c) => correlation_number(c),
            PenaltyClass::ConstantPerimeter => 7,
            PenaltyClass::ConstantArea => 8,
        }
    }
}

impl ProfitClass {
    pub fn all() -> Vec<ProfitClass> {
        let mut v: Vec<_> = CORRELATIONS.iter().map(|&c| ProfitClass::Classic(c)).collect();
        v.push(ProfitClass::Area);
        v
    }

    /// 1-based class number (`p1` .. `p7`).
    pub fn number(self) -> usize {
        match self {
            ProfitClass::Classic(c) => correlation_number(c),
            ProfitClass::Area => 7,
        }
    }
}

fn correlation_number(c: Correlation) -> usize {
    CORRELATIONS.iter().position(|&x| x == c).unwrap() + 1
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightType::A1 => f.write_str("a1"),
            WeightType::A2 => f.write_str("a2"),
        }
    }
}

impl fmt::Display for PenaltyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi{}", self.number())
    }
}

impl fmt::Display for ProfitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.number())
    }
}

impl FromStr for WeightType {
    type Err = PkpError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(WeightType::A1),
            "a2" => Ok(WeightType::A2),
            _ => Err(PkpError::InvalidParameter(format!("unknown weight type `{s}`"))),
        }
    }
}

impl FromStr for PenaltyClass {
    type Err = PkpError;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let num = lower
            .strip_prefix("pi")
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|k| (1..=8).contains(k))
            .ok_or_else(|| PkpError::InvalidParameter(format!("unknown penalty class `{s}`")))?;
        Ok(PenaltyClass::all()[num - 1])
    }
}

impl FromStr for ProfitClass {
    type Err = PkpError;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let num = lower
            .strip_prefix('p')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|k| (1..=7).contains(k))
            .ok_or_else(|| PkpError::InvalidParameter(format!("unknown profit class `{s}`")))?;
        Ok(ProfitClass::all()[num - 1])
    }
}

/// Parses a decimal such as `0.5`, `0.01` or `1` (or a fraction `1/3`) into
/// an exact ratio.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let bad = || PkpError::InvalidParameter(format!("cannot parse `{s}` as a ratio"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if frac_part.len() > 15 || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let den = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    Ok(Ratio::new(int * den + frac, den))
}

/// Formats a ratio as a short decimal when it has a finite expansion of at
/// most six digits, otherwise as `num/den`.
pub fn format_ratio(r: Ratio<i64>) -> String {
    let (num, den) = (*r.numer(), *r.denom());
    for digits in 0..=6u32 {
        let scale = 10i64.pow(digits);
        if (num * scale) % den == 0 {
            let scaled = num * scale / den;
            if digits == 0 {
                return scaled.to_string();
            }
            let int = scaled / scale;
            let frac = scaled % scale;
            return format!("{int}.{frac:0width$}", width = digits as usize);
        }
    }
    format!("{num}/{den}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub range: i64,
    pub weight_type: WeightType,
    pub penalty_class: PenaltyClass,
    pub profit_class: ProfitClass,
    /// Capacity as a fraction of the total weight, in `(0, 1]`.
    pub tau: Ratio<i64>,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(PkpError::InvalidParameter("n must be at least 1".into()));
        }
        if self.range < 10 {
            return Err(PkpError::InvalidParameter("R must be at least 10".into()));
        }
        if self.tau <= Ratio::from_integer(0) || self.tau > Ratio::from_integer(1) {
            return Err(PkpError::InvalidParameter("tau must lie in (0, 1]".into()));
        }
        Ok(())
    }

    /// File-name friendly description, e.g. `n1000_R1000_a1_pi3_p5_tau0.5_s7`.
    pub fn tag(&self) -> String {
        format!(
            "n{}_R{}_{}_{}_{}_tau{}_s{}",
            self.n,
            self.range,
            self.weight_type,
            self.penalty_class,
            self.profit_class,
            format_ratio(self.tau),
            self.seed
        )
    }
}

fn correlated(rng: &mut ChaCha8Rng, corr: Correlation, w: i64, r: i64) -> i64 {
    let tenth = r / 10;
    let fivehundredth = r / 500;
    match corr {
        Correlation::Uncorrelated => rng.gen_range(1..=r),
        Correlation::Weak => rng.gen_range((w - tenth).max(1)..=w + tenth),
        Correlation::Strong => w + tenth,
        Correlation::InverseStrong => (w - tenth).max(1),
        Correlation::AlmostStrong => {
            rng.gen_range(w + tenth - fivehundredth..=w + tenth + fivehundredth)
        }
        Correlation::SubsetSum => w,
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let r = spec.range;
    let half = r / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut items = Vec::with_capacity(spec.n);
    for idx in 0..spec.n {
        let w = match spec.weight_type {
            WeightType::A1 => rng.gen_range(1..=r),
            WeightType::A2 => half + rng.gen_range(0..=half),
        };
        let penalty = match spec.penalty_class {
            PenaltyClass::Classic(c) => correlated(&mut rng, c, w, r),
            PenaltyClass::ConstantPerimeter => r - w + 1,
            PenaltyClass::ConstantArea => r / w,
        };
        let profit = match spec.profit_class {
            ProfitClass::Classic(c) => correlated(&mut rng, c, w, r),
            ProfitClass::Area => penalty * w,
        };
        items.push(Item::new(profit, w, penalty, idx));
    }
    let total: i128 = items.iter().map(|it| it.weight as i128).sum();
    let scaled = total * *spec.tau.numer() as i128 / *spec.tau.denom() as i128;
    let capacity = (scaled as i64).max(1);
    Ok(canonicalize(items, capacity)?.with_label(spec.tag()))
}

/// The full factorial of classes (2 weight types x 8 penalty x 7 profit x
/// 3 capacity ratios) with `count` instances per cell. Seeds are
/// `base_seed + k` for the k-th spec in enumeration order.
pub fn paper_suite(n: usize, range: i64, count: usize, base_seed: u64) -> Vec<GenSpec> {
    let taus = [Ratio::new(1, 2), Ratio::new(1, 10), Ratio::new(1, 100)];
    let mut specs = Vec::with_capacity(2 * 8 * 7 * 3 * count);
    for weight_type in WeightType::ALL {
        for penalty_class in PenaltyClass::all() {
            for profit_class in ProfitClass::all() {
                for tau in taus {
                    for _ in 0..count {
                        let seed = base_seed.wrapping_add(specs.len() as u64);
                        specs.push(GenSpec {
                            n,
                            range,
                            weight_type,
                            penalty_class,
                            profit_class,
                            tau,
                            seed,
                        });
                    }
                }
            }
        }
    }
    specs
}
