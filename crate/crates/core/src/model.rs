//! Domain types shared by every solver: items, instances in canonical
//! (penalty-sorted) order, solutions, and the line-oriented instance format.
//!
//! Canonical order sorts items by non-increasing penalty, breaking ties by
//! non-increasing weight and then by input position. All solvers index items
//! by their canonical position, so the leading item of a selection (the one
//! whose penalty is charged) is always its smallest index.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{PkpError, Result};

/// Upper bound on `n * max_value`; keeps every sum of item data below 2^62.
const SUM_GUARD: i128 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item {
    pub profit: i64,
    pub weight: i64,
    pub penalty: i64,
    /// 0-based position in input order.
    pub original_index: usize,
}

impl Item {
    pub fn new(profit: i64, weight: i64, penalty: i64, original_index: usize) -> Self {
        Self {
            profit,
            weight,
            penalty,
            original_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    items: Vec<Item>,
    capacity: i64,
    pub label: String,
}

impl Instance {
    /// Builds an instance from `(profit, weight, penalty)` triples given in
    /// input order.
    pub fn from_triples(triples: &[(i64, i64, i64)], capacity: i64) -> Result<Self> {
        let items = triples
            .iter()
            .enumerate()
            .map(|(i, &(p, w, pi))| Item::new(p, w, pi, i))
            .collect();
        canonicalize(items, capacity)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Items in canonical order.
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, j: usize) -> &Item {
        &self.items[j]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }

    pub fn total_weight(&self) -> i64 {
        self.items.iter().map(|it| it.weight).sum()
    }

    pub fn max_penalty(&self) -> i64 {
        self.items.first().map_or(0, |it| it.penalty)
    }

    /// Canonical positions of the items sorted by non-increasing efficiency
    /// `p/w`, ties broken by canonical position (which is the same as
    /// non-increasing penalty first).
    pub fn efficiency_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.items.len()).collect();
        order.sort_by(|&a, &b| efficiency_cmp(&self.items[a], &self.items[b]).then(a.cmp(&b)));
        order
    }

    /// Writes the instance in the text format, items in input order.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_text().as_bytes())
    }

    pub fn to_text(&self) -> String {
        let mut by_input: Vec<&Item> = self.items.iter().collect();
        by_input.sort_by_key(|it| it.original_index);
        let mut s = String::with_capacity(16 * (self.items.len() + 1));
        let _ = writeln!(s, "{} {}", self.items.len(), self.capacity);
        for it in by_input {
            let _ = writeln!(s, "{} {} {}", it.profit, it.weight, it.penalty);
        }
        s
    }

    /// Reads the text format: a header line `n c` followed by `n` lines of
    /// `p w pi`. Blank lines are ignored.
    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut header: Option<(usize, i64)> = None;
        let mut triples = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.map_err(|e| PkpError::Parse {
                line: lineno + 1,
                reason: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let fields = parse_fields(trimmed, lineno + 1)?;
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(parse_err(lineno + 1, "expected header `n c`"));
                    }
                    if fields[0] < 0 {
                        return Err(parse_err(lineno + 1, "negative item count"));
                    }
                    header = Some((fields[0] as usize, fields[1]));
                }
                Some((n, _)) => {
                    if fields.len() != 3 {
                        return Err(parse_err(lineno + 1, "expected `p w pi`"));
                    }
                    if triples.len() == n {
                        return Err(parse_err(lineno + 1, "more item lines than announced"));
                    }
                    triples.push((fields[0], fields[1], fields[2]));
                }
            }
        }
        let (n, capacity) = header.ok_or_else(|| parse_err(1, "missing header"))?;
        if triples.len() != n {
            return Err(parse_err(
                triples.len() + 2,
                &format!("expected {n} items, found {}", triples.len()),
            ));
        }
        Self::from_triples(&triples, capacity)
    }
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|e| parse_err(lineno, &format!("`{tok}`: {e}")))
        })
        .collect()
}

fn parse_err(line: usize, reason: &str) -> PkpError {
    PkpError::Parse {
        line,
        reason: reason.to_string(),
    }
}

/// Orders items by non-increasing efficiency `p/w` (exact cross-multiplication).
pub(crate) fn efficiency_cmp(a: &Item, b: &Item) -> std::cmp::Ordering {
    let lhs = a.profit as i128 * b.weight as i128;
    let rhs = b.profit as i128 * a.weight as i128;
    rhs.cmp(&lhs)
}

/// Validates items and sorts them into canonical order.
pub fn canonicalize(mut items: Vec<Item>, capacity: i64) -> Result<Instance> {
    if capacity < 0 {
        return Err(PkpError::InvalidCapacity(capacity));
    }
    let mut max_value = capacity;
    for it in &items {
        let reason = if it.weight < 1 {
            Some("weight must be at least 1")
        } else if it.profit < 0 {
            Some("profit must be non-negative")
        } else if it.penalty < 0 {
            Some("penalty must be non-negative")
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(PkpError::InvalidItem {
                index: it.original_index,
                reason: reason.into(),
            });
        }
        max_value = max_value.max(it.profit).max(it.weight).max(it.penalty);
    }
    let n = items.len().max(1);
    if n as i128 * max_value as i128 >= SUM_GUARD {
        return Err(PkpError::OverflowRisk {
            n: items.len(),
            max_value,
        });
    }
    items.sort_by(|a, b| {
        b.penalty
            .cmp(&a.penalty)
            .then(b.weight.cmp(&a.weight))
            .then(a.original_index.cmp(&b.original_index))
    });
    Ok(Instance {
        items,
        capacity,
        label: String::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: i64,
    /// Canonical index of the leading item; `None` for the empty selection.
    pub leading_index: Option<usize>,
    /// Canonical indices, ascending.
    pub selected: Vec<usize>,
    pub certified_optimal: bool,
}

impl Solution {
    pub fn empty() -> Self {
        Self {
            value: 0,
            leading_index: None,
            selected: Vec::new(),
            certified_optimal: false,
        }
    }

    pub fn certified(mut self, certified: bool) -> Self {
        self.certified_optimal = certified;
        self
    }

    /// Selected items mapped back to input positions, ascending.
    pub fn original_indices(&self, inst: &Instance) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .selected
            .iter()
            .map(|&j| inst.item(j).original_index)
            .collect();
        v.sort_unstable();
        v
    }
}

/// Computes the objective of a selection of canonical indices.
pub fn evaluate(inst: &Instance, selected: &[usize]) -> Result<Solution> {
    let mut sel: Vec<usize> = selected.to_vec();
    sel.sort_unstable();
    sel.dedup();
    let mut profit = 0i64;
    let mut weight = 0i64;
    for &j in &sel {
        if j >= inst.len() {
            return Err(PkpError::IndexOutOfRange {
                index: j,
                n: inst.len(),
            });
        }
        profit += inst.item(j).profit;
        weight += inst.item(j).weight;
    }
    if weight > inst.capacity() {
        return Err(PkpError::CapacityExceeded {
            weight,
            capacity: inst.capacity(),
        });
    }
    let leading_index = sel.first().copied();
    let penalty = leading_index.map_or(0, |j| inst.item(j).penalty);
    Ok(Solution {
        value: profit - penalty,
        leading_index,
        selected: sel,
        certified_optimal: false,
    })
}
