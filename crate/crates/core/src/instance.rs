//! Problem instances and checked solutions.

use thiserror::Error;

use crate::cost::{checked_sum, Cost};
use crate::graph::Graph;
use crate::order::{is_permutation, PartialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("graph has {graph} vertices but the order has {order} elements")]
    SizeMismatch { graph: usize, order: usize },
}

/// A graph with a partial order on its vertex set.
///
/// Unweighted instances are solved with every edge costing 1, so a solution
/// of an unweighted instance always costs `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    order: PartialOrder,
    connected: bool,
}

impl Instance {
    pub fn new(graph: Graph, order: PartialOrder) -> Result<Self, InstanceError> {
        if graph.n() != order.n() {
            return Err(InstanceError::SizeMismatch {
                graph: graph.n(),
                order: order.n(),
            });
        }
        let connected = graph.is_connected();
        Ok(Self {
            graph,
            order,
            connected,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weighted(&self) -> bool {
        self.graph.is_weighted()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Disconnected graphs on two or more vertices have no Hamiltonian path.
    pub fn trivially_infeasible(&self) -> bool {
        !self.connected && self.n() >= 2
    }
}

/// A verified ordered Hamiltonian path and its exact cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedHamPath {
    pub sequence: Vec<usize>,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("sequence is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    /// Positions `i` and `i + 1` of the sequence are not adjacent.
    #[error("step {0} of the sequence uses a non-edge")]
    NonEdgeStep(usize),
    /// `u ≺ v` but `v` was placed before `u`.
    #[error("order requires {0} before {1}")]
    OrderViolation(usize, usize),
    #[error("path cost overflows 64-bit rationals")]
    CostOverflow,
}

/// Checks that `seq` is an ordered Hamiltonian path extending the order and
/// prices it. Checks run permutation, then adjacency, then precedence, and
/// the first failure is reported.
pub fn verify_solution(instance: &Instance, seq: &[usize]) -> Result<OrderedHamPath, VerifyError> {
    let n = instance.n();
    if !is_permutation(seq, n) {
        return Err(VerifyError::NotAPermutation(n));
    }
    let graph = instance.graph();
    let mut step_costs = Vec::with_capacity(n.saturating_sub(1));
    for (i, w) in seq.windows(2).enumerate() {
        match graph.cost(w[0], w[1]) {
            Some(c) => step_costs.push(c),
            None => return Err(VerifyError::NonEdgeStep(i)),
        }
    }
    let mut placed = vec![false; n];
    for &v in seq {
        if let Some(&u) = instance
            .order()
            .predecessors(v)
            .iter()
            .find(|&&u| !placed[u])
        {
            return Err(VerifyError::OrderViolation(u, v));
        }
        placed[v] = true;
    }
    let cost = checked_sum(&step_costs).ok_or(VerifyError::CostOverflow)?;
    Ok(OrderedHamPath {
        sequence: seq.to_vec(),
        cost,
    })
}
