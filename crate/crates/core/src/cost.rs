//! Exact edge costs.
//!
//! Costs are rationals with `i64` numerator and denominator. Solvers never
//! compare rationals in their inner loops: [`ScaledCosts`] rescales every
//! edge cost of an instance onto a common denominator so path costs become
//! plain integer sums.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Graph;

/// An exact rational edge or path cost.
pub type Cost = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("malformed cost literal `{0}`")]
    Malformed(String),
    #[error("cost literal `{0}` does not fit in 64-bit rationals")]
    Overflow(String),
    #[error("scaled edge costs overflow 64-bit path sums")]
    ScaleOverflow,
}

/// Parses an exact cost from a decimal (`-2.50`, `3`, `.5`) or fraction
/// (`7/3`) literal.
pub fn parse_cost(text: &str) -> Result<Cost, CostError> {
    let malformed = || CostError::Malformed(text.to_string());
    let overflow = || CostError::Overflow(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(malformed());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = parse_int(num).ok_or_else(malformed)?;
        let den: i64 = parse_int(den).ok_or_else(malformed)?;
        if den == 0 {
            return Err(malformed());
        }
        return Ok(Ratio::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|x| x.checked_add(i64::from(b - b'0')))
            .ok_or_else(overflow)?;
    }
    let denom = 10i64
        .checked_pow(u32::try_from(frac_part.len()).map_err(|_| overflow())?)
        .ok_or_else(overflow)?;
    let value = Ratio::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<i64> {
    let s = s.trim();
    if s.is_empty() || s.starts_with('+') && s.len() == 1 {
        return None;
    }
    s.parse().ok()
}

/// Writes a cost as a terminating decimal when one exists, otherwise as a
/// reduced fraction `p/q`. The output always parses back to the same value.
pub fn format_cost(cost: &Cost) -> String {
    let den = *cost.denom();
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{}/{}", cost.numer(), den);
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits);
    let scaled = i128::from(*cost.numer()) * scale / i128::from(den);
    if digits == 0 {
        return scaled.to_string();
    }
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let int = abs / scale as u128;
    let frac = abs % scale as u128;
    format!("{sign}{int}.{frac:0width$}", width = digits as usize)
}

/// A cost shown as `p/q` followed by its decimal approximation.
pub struct DisplayCost<'a>(pub &'a Cost);

impl fmt::Display for DisplayCost<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let approx = self.0.to_f64().unwrap_or(f64::NAN);
        write!(f, "{}/{} (~{})", self.0.numer(), self.0.denom(), approx)
    }
}

/// Missing-edge marker in the scaled table.
const NO_EDGE: i64 = i64::MIN;

/// Dense tables are used up to this many vertices; larger graphs keep costs
/// in a hash map keyed by the ordered vertex pair.
const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
enum Table {
    Dense(Vec<i64>),
    Sparse(rustc_hash::FxHashMap<(u32, u32), i64>),
}

/// Integer view of a graph's edge costs on a common denominator.
///
/// Every edge cost equals `scaled / denominator`. Construction checks that
/// any sum of `n - 1` scaled costs fits in an `i64`.
#[derive(Debug, Clone)]
pub struct ScaledCosts {
    n: usize,
    denominator: i64,
    nonnegative: bool,
    table: Table,
}

impl ScaledCosts {
    pub fn new(graph: &Graph) -> Result<Self, CostError> {
        let n = graph.n();
        let denominator = match graph.costs() {
            None => 1,
            Some(costs) => costs.iter().try_fold(1i64, |acc, c| {
                let g = acc.gcd(c.denom());
                (acc / g)
                    .checked_mul(*c.denom())
                    .ok_or(CostError::ScaleOverflow)
            })?,
        };
        let mut max_abs: i64 = 0;
        let mut nonnegative = true;
        let mut scaled_edges = Vec::with_capacity(graph.m());
        for (idx, &(u, v)) in graph.edges().iter().enumerate() {
            let scaled = match graph.costs() {
                None => 1,
                Some(costs) => {
                    let c = costs[idx];
                    let factor = denominator / c.denom();
                    (*c.numer())
                        .checked_mul(factor)
                        .ok_or(CostError::ScaleOverflow)?
                }
            };
            if scaled == NO_EDGE {
                return Err(CostError::ScaleOverflow);
            }
            nonnegative &= scaled >= 0;
            max_abs = max_abs.max(scaled.checked_abs().ok_or(CostError::ScaleOverflow)?);
            scaled_edges.push((u, v, scaled));
        }
        let steps = i64::try_from(n.max(1)).map_err(|_| CostError::ScaleOverflow)?;
        // Keep headroom so one extra edge on top of a path sum never overflows.
        max_abs
            .checked_mul(steps + 1)
            .ok_or(CostError::ScaleOverflow)?;

        let table = if n <= DENSE_LIMIT {
            let mut dense = vec![NO_EDGE; n * n];
            for &(u, v, c) in &scaled_edges {
                dense[u * n + v] = c;
                dense[v * n + u] = c;
            }
            Table::Dense(dense)
        } else {
            let mut map = rustc_hash::FxHashMap::default();
            for &(u, v, c) in &scaled_edges {
                map.insert((u as u32, v as u32), c);
                map.insert((v as u32, u as u32), c);
            }
            Table::Sparse(map)
        };
        Ok(Self {
            n,
            denominator,
            nonnegative,
            table,
        })
    }

    /// Scaled cost of edge `uv`, or `None` when `u` and `v` are not adjacent.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<i64> {
        let c = match &self.table {
            Table::Dense(d) => d[u * self.n + v],
            Table::Sparse(m) => *m.get(&(u as u32, v as u32))?,
        };
        (c != NO_EDGE).then_some(c)
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// True when no edge has a negative cost, which makes prefix-cost
    /// pruning sound.
    pub fn nonnegative(&self) -> bool {
        self.nonnegative
    }

    /// Converts a scaled path sum back to an exact cost.
    pub fn unscale(&self, total: i64) -> Cost {
        Ratio::new(total, self.denominator)
    }
}

/// Sums exact costs, reporting overflow instead of wrapping.
pub fn checked_sum<'a>(costs: impl IntoIterator<Item = &'a Cost>) -> Option<Cost> {
    costs
        .into_iter()
        .try_fold(Cost::zero(), |acc, c| acc.checked_add(c))
}

/// Multiplies a cost by an integer count without wrapping.
pub fn checked_scale(cost: &Cost, times: i64) -> Option<Cost> {
    cost.checked_mul(&Ratio::from_integer(times))
}
