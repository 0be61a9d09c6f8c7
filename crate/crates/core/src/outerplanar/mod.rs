//! Quadratic interval dynamic program for outerplanar graphs.
//!
//! On a 2-connected outerplanar graph every prefix of a Hamiltonian path
//! covers a contiguous arc of the outer cycle, so states are arcs `[a, b]`
//! plus which endpoint the path currently ends at. General outerplanar
//! graphs are handled block by block.

mod blocks;
mod cycle;

pub use blocks::{
    biconnected_components, block_path, is_outerplanar, solve_outerplanar, BlockPath, Direction,
};
pub use cycle::{find_outer_cycle, OuterCycle};

use num_rational::Ratio;
use thiserror::Error;

use crate::cost::{Cost, ScaledCosts};
use crate::dp::{finish, rank_level, SolveError, INF};
use crate::instance::{Instance, OrderedHamPath};
use crate::order::PartialOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OuterplanarError {
    #[error("graph is not 2-connected outerplanar")]
    NotOuterplanar2Connected,
    #[error("a block of the graph is not outerplanar")]
    NotOuterplanar,
    #[error("block-cut tree is not a path")]
    BlockTreeNotPath,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Which endpoint of an arc the path ends at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    /// The path ends at the arc's first vertex `a`.
    Start,
    /// The path ends at the arc's last vertex `b`.
    Finish,
}

impl End {
    fn bit(self) -> usize {
        match self {
            End::Start => 0,
            End::Finish => 1,
        }
    }
}

/// Where each vertex's order predecessors sit on the cycle.
///
/// For position `p`, `f(p)` is the first position after `p` (clockwise)
/// holding a predecessor and `l(p)` the last; both equal `p` iff the vertex
/// is minimal.
#[derive(Debug, Clone)]
pub struct IntervalBounds {
    n: usize,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl IntervalBounds {
    pub fn new(order: &PartialOrder, cycle: &OuterCycle) -> Self {
        let n = cycle.len();
        let mut first = vec![0; n];
        let mut last = vec![0; n];
        for p in 0..n {
            let v = cycle.vertex(p);
            let offsets = order
                .predecessors(v)
                .iter()
                .map(|&u| (cycle.position(u) + n - p) % n);
            first[p] = offsets.clone().min().unwrap_or(0);
            last[p] = offsets.max().unwrap_or(0);
        }
        Self { n, first, last }
    }

    pub fn f(&self, p: usize) -> usize {
        (p + self.first[p]) % self.n
    }

    pub fn l(&self, p: usize) -> usize {
        (p + self.last[p]) % self.n
    }

    /// All predecessors of `a` lie in the arc of `len` positions starting
    /// at `a`.
    fn fits_after(&self, a: usize, len: usize) -> bool {
        self.last[a] < len
    }

    /// All predecessors of `b` lie in the arc of `len` positions ending at
    /// `b`.
    fn fits_before(&self, b: usize, len: usize) -> bool {
        self.first[b] == 0 || self.first[b] > self.n - len
    }
}

const NONE: u8 = 2;

/// The filled interval table.
///
/// Entry `(a, b, end)` is the cheapest ordered path visiting exactly the
/// arc from position `a` clockwise to position `b`, ending at the chosen
/// endpoint, whose sequence is a prefix of a linear extension.
pub struct OuterTable {
    cycle: OuterCycle,
    denominator: i64,
    cost: Vec<i64>,
    choice: Vec<u8>,
    /// Lexicographic ranks of the full-circle level.
    top_rank: Vec<u32>,
}

impl OuterTable {
    pub fn fill(instance: &Instance, cycle: &OuterCycle) -> Result<Self, SolveError> {
        let n = cycle.len();
        let needed = 2 * (n as u128) * (n as u128);
        if needed > crate::dp::DEFAULT_STATE_BUDGET as u128 {
            return Err(SolveError::StateBudgetExceeded {
                needed,
                budget: crate::dp::DEFAULT_STATE_BUDGET,
            });
        }
        let costs = ScaledCosts::new(instance.graph())?;
        let bounds = IntervalBounds::new(instance.order(), cycle);
        let mut t = Self {
            cycle: cycle.clone(),
            denominator: costs.denominator(),
            cost: vec![INF; 2 * n * n],
            choice: vec![NONE; 2 * n * n],
            top_rank: Vec::new(),
        };
        let edge = |p: usize, q: usize| costs.get(cycle.vertex(p), cycle.vertex(q));

        let mut rank = vec![0u32; 2 * n];
        let mut keys = Vec::with_capacity(2 * n);
        let mut finite = Vec::with_capacity(2 * n);
        for a in 0..n {
            if bounds.first[a] == 0 {
                let (s, f) = (t.idx(1, a, End::Start), t.idx(1, a, End::Finish));
                t.cost[s] = 0;
                t.cost[f] = 0;
            }
        }
        let relabel = |t: &Self,
                       len: usize,
                       rank: &mut Vec<u32>,
                       keys: &mut Vec<(u32, u32)>,
                       finite: &mut Vec<usize>,
                       prev: &[u32]| {
            keys.clear();
            finite.clear();
            for slot in 0..2 * n {
                let (a, end) = (
                    slot / 2,
                    if slot % 2 == 0 {
                        End::Start
                    } else {
                        End::Finish
                    },
                );
                let at = t.idx(len, a, end);
                if t.cost[at] == INF {
                    continue;
                }
                let pred_rank = match t.pred_slot(len, a, end) {
                    Some(s) => prev[s],
                    None => 0,
                };
                keys.push((pred_rank, t.last_vertex(len, a, end) as u32));
                finite.push(slot);
            }
            let r = rank_level(keys);
            for (&slot, r) in finite.iter().zip(r) {
                rank[slot] = r;
            }
        };
        let no_prev = vec![0u32; 2 * n];
        relabel(&t, 1, &mut rank, &mut keys, &mut finite, &no_prev);

        for len in 2..=n {
            let prev = rank.clone();
            for a in 0..n {
                let b = cycle.add(a, len - 1);
                let x = cycle.add(a, 1);
                let y = cycle.sub(b, 1);
                if bounds.fits_after(a, len) {
                    let options = [(x, End::Start, edge(a, x)), (x, End::Finish, edge(a, b))];
                    t.relax(len, a, End::Start, &options, &prev);
                }
                if bounds.fits_before(b, len) {
                    let options = [(a, End::Finish, edge(b, y)), (a, End::Start, edge(a, b))];
                    t.relax(len, a, End::Finish, &options, &prev);
                }
            }
            relabel(&t, len, &mut rank, &mut keys, &mut finite, &prev);
        }
        t.top_rank = rank;
        Ok(t)
    }

    #[inline]
    fn idx(&self, len: usize, a: usize, end: End) -> usize {
        ((len - 1) * self.cycle.len() + a) * 2 + end.bit()
    }

    fn relax(
        &mut self,
        len: usize,
        a: usize,
        end: End,
        options: &[(usize, End, Option<i64>); 2],
        prev: &[u32],
    ) {
        let mut best: Option<(i64, u32, u8)> = None;
        for (choice, &(start, from_end, c)) in options.iter().enumerate() {
            let Some(c) = c else { continue };
            let from = self.cost[self.idx(len - 1, start, from_end)];
            if from == INF {
                continue;
            }
            let cand = (from + c, prev[start * 2 + from_end.bit()], choice as u8);
            if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
        }
        if let Some((c, _, choice)) = best {
            let at = self.idx(len, a, end);
            self.cost[at] = c;
            self.choice[at] = choice;
        }
    }

    fn last_vertex(&self, len: usize, a: usize, end: End) -> usize {
        match end {
            End::Start => self.cycle.vertex(a),
            End::Finish => self.cycle.vertex(self.cycle.add(a, len - 1)),
        }
    }

    /// Predecessor entry `(start, end)` one level down, as a level slot.
    fn pred_slot(&self, len: usize, a: usize, end: End) -> Option<usize> {
        self.pred(len, a, end).map(|(s, e)| s * 2 + e.bit())
    }

    fn pred(&self, len: usize, a: usize, end: End) -> Option<(usize, End)> {
        let choice = self.choice[self.idx(len, a, end)];
        if len == 1 || choice == NONE {
            return None;
        }
        Some(match (end, choice) {
            (End::Start, 0) => (self.cycle.add(a, 1), End::Start),
            (End::Start, _) => (self.cycle.add(a, 1), End::Finish),
            (End::Finish, 0) => (a, End::Finish),
            (End::Finish, _) => (a, End::Start),
        })
    }

    pub fn cycle(&self) -> &OuterCycle {
        &self.cycle
    }

    /// Number of positions on the arc from `a` to `b`.
    fn arc_len(&self, a: usize, b: usize) -> usize {
        self.cycle.sub(b, a) + 1
    }

    /// Cost of entry `(a, b, end)` for positions `a`, `b`, if finite.
    pub fn cost(&self, a: usize, b: usize, end: End) -> Option<Cost> {
        let len = self.arc_len(a, b);
        let c = self.cost[self.idx(len, a, end)];
        (c != INF).then(|| Ratio::new(c, self.denominator))
    }

    /// The optimal path behind a finite entry, as vertex labels.
    pub fn witness(&self, a: usize, b: usize, end: End) -> Option<Vec<usize>> {
        let mut len = self.arc_len(a, b);
        if self.cost[self.idx(len, a, end)] == INF {
            return None;
        }
        let (mut a, mut end) = (a, end);
        let mut seq = vec![self.last_vertex(len, a, end)];
        while let Some((pa, pe)) = self.pred(len, a, end) {
            len -= 1;
            a = pa;
            end = pe;
            seq.push(self.last_vertex(len, a, end));
        }
        seq.reverse();
        Some(seq)
    }

    /// Best full-circle entry by `(cost, lexicographic rank)`, restricted
    /// to paths ending at the arc start or over both endpoints.
    fn best_full(&self, both_ends: bool) -> Option<(usize, End)> {
        let n = self.cycle.len();
        let ends: &[End] = if both_ends {
            &[End::Start, End::Finish]
        } else {
            &[End::Start]
        };
        (0..n)
            .flat_map(|a| ends.iter().map(move |&e| (a, e)))
            .filter(|&(a, e)| self.cost[self.idx(n, a, e)] != INF)
            .min_by_key(|&(a, e)| (self.cost[self.idx(n, a, e)], self.top_rank[a * 2 + e.bit()]))
    }

    /// `min_v M(v, v ⊖ 1, Start)` with its path.
    pub fn optimum(&self) -> Option<(Vec<usize>, i64)> {
        let n = self.cycle.len();
        let (a, end) = self.best_full(false)?;
        debug_assert_eq!(
            self.best_full(true)
                .map(|(a2, e2)| self.witness(a2, self.cycle.sub(a2, 1), e2)),
            Some(self.witness(a, self.cycle.sub(a, 1), end))
        );
        let seq = self.witness(a, self.cycle.sub(a, 1), end)?;
        Some((seq, self.cost[self.idx(n, a, end)]))
    }

    /// Like [`optimum`](Self::optimum) but also admitting paths that end at
    /// the arc's last vertex.
    pub fn optimum_any_end(&self) -> Option<(Vec<usize>, i64)> {
        let n = self.cycle.len();
        let (a, end) = self.best_full(true)?;
        let seq = self.witness(a, self.cycle.sub(a, 1), end)?;
        Some((seq, self.cost[self.idx(n, a, end)]))
    }
}

/// Solves a 2-connected outerplanar instance given its outer cycle.
pub fn solve_outerplanar_2conn(
    instance: &Instance,
    cycle: &OuterCycle,
) -> Result<Option<OrderedHamPath>, SolveError> {
    if instance.n() == 1 {
        return Ok(Some(OrderedHamPath {
            sequence: vec![0],
            cost: Cost::from_integer(0),
        }));
    }
    let costs = ScaledCosts::new(instance.graph())?;
    let table = OuterTable::fill(instance, cycle)?;
    Ok(table
        .optimum()
        .map(|(seq, total)| finish(seq, total, &costs)))
}

#[cfg(test)]
mod tests;
