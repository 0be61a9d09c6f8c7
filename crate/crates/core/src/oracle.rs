//! Exhaustive backtracking reference solver.
//!
//! The search only ever extends a prefix by a vertex that is minimal among
//! the unvisited ones and adjacent to the current end, so every prefix it
//! builds is a prefix of a linear extension. Candidates are tried in
//! ascending index order, which makes the first optimum found the
//! lexicographically smallest.

use crate::cost::ScaledCosts;
use crate::dp::{finish, SolveError};
use crate::instance::{Instance, OrderedHamPath};

/// Default vertex cap for exhaustive search.
pub const DEFAULT_CAP: usize = 16;

/// A prefix under construction together with the bookkeeping needed to
/// list its admissible extensions.
#[derive(Debug, Clone)]
pub struct SearchState<'a> {
    instance: &'a Instance,
    prefix: Vec<usize>,
    visited: Vec<bool>,
    /// Unvisited strict predecessors per vertex.
    pending: Vec<usize>,
    prefix_cost: i64,
    costs: &'a ScaledCosts,
}

impl<'a> SearchState<'a> {
    pub fn new(instance: &'a Instance, costs: &'a ScaledCosts) -> Self {
        let n = instance.n();
        let pending = (0..n)
            .map(|v| instance.order().predecessors(v).len())
            .collect();
        Self {
            instance,
            prefix: Vec::with_capacity(n),
            visited: vec![false; n],
            pending,
            prefix_cost: 0,
            costs,
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn visited(&self) -> &[bool] {
        &self.visited
    }

    /// Scaled cost of the prefix (see [`ScaledCosts`]).
    pub fn prefix_cost(&self) -> i64 {
        self.prefix_cost
    }

    /// Unvisited vertices with no unvisited strict predecessor, ascending.
    pub fn remaining_minima(&self) -> Vec<usize> {
        (0..self.visited.len())
            .filter(|&v| !self.visited[v] && self.pending[v] == 0)
            .collect()
    }

    /// Whether `v` may be appended: minimal among unvisited and adjacent to
    /// the last vertex (any minimal vertex may start the path).
    pub fn can_push(&self, v: usize) -> bool {
        !self.visited[v]
            && self.pending[v] == 0
            && self
                .prefix
                .last()
                .is_none_or(|&u| self.costs.get(u, v).is_some())
    }

    pub fn push(&mut self, v: usize) {
        debug_assert!(self.can_push(v));
        if let Some(&u) = self.prefix.last() {
            self.prefix_cost += self.costs.get(u, v).expect("pushed along an edge");
        }
        self.prefix.push(v);
        self.visited[v] = true;
        for &w in self.instance.order().successors(v) {
            self.pending[w] -= 1;
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        let v = self.prefix.pop()?;
        self.visited[v] = false;
        for &w in self.instance.order().successors(v) {
            self.pending[w] += 1;
        }
        if let Some(&u) = self.prefix.last() {
            self.prefix_cost -= self.costs.get(u, v).expect("pushed along an edge");
        }
        Some(v)
    }

    fn candidates(&self) -> Vec<usize> {
        match self.prefix.last() {
            None => self.remaining_minima(),
            Some(&u) => self
                .instance
                .graph()
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !self.visited[w] && self.pending[w] == 0)
                .collect(),
        }
    }
}

fn guard(instance: &Instance, cap: usize) -> Result<(), SolveError> {
    if instance.n() > cap {
        return Err(SolveError::SizeGuard {
            n: instance.n(),
            cap,
        });
    }
    Ok(())
}

/// Minimum-cost ordered Hamiltonian path extending the order, the
/// lexicographically smallest among optima, or `None` if none exists.
pub fn solve_bruteforce(
    instance: &Instance,
    cap: usize,
) -> Result<Option<OrderedHamPath>, SolveError> {
    guard(instance, cap)?;
    if instance.trivially_infeasible() {
        return Ok(None);
    }
    let costs = ScaledCosts::new(instance.graph())?;
    let mut state = SearchState::new(instance, &costs);
    let mut best: Option<(i64, Vec<usize>)> = None;
    let prune = costs.nonnegative();
    search(&mut state, &mut best, prune);
    Ok(best.map(|(total, seq)| finish(seq, total, &costs)))
}

fn search(state: &mut SearchState<'_>, best: &mut Option<(i64, Vec<usize>)>, prune: bool) {
    if let Some((incumbent, _)) = best {
        if prune && state.prefix_cost > *incumbent {
            return;
        }
    }
    if state.prefix.len() == state.visited.len() {
        // Strict improvement only: earlier finds are lexicographically smaller.
        if best.as_ref().is_none_or(|(b, _)| state.prefix_cost < *b) {
            *best = Some((state.prefix_cost, state.prefix.clone()));
        }
        return;
    }
    for v in state.candidates() {
        state.push(v);
        search(state, best, prune);
        state.pop();
    }
}

/// Number of ordered Hamiltonian paths extending the order.
pub fn count_solutions(instance: &Instance, cap: usize) -> Result<u128, SolveError> {
    guard(instance, cap)?;
    if instance.trivially_infeasible() {
        return Ok(0);
    }
    let costs = ScaledCosts::new(instance.graph())?;
    let mut state = SearchState::new(instance, &costs);
    Ok(count(&mut state))
}

fn count(state: &mut SearchState<'_>) -> u128 {
    if state.prefix.len() == state.visited.len() {
        return 1;
    }
    let mut total = 0;
    for v in state.candidates() {
        state.push(v);
        total += count(state);
        state.pop();
    }
    total
}
