//! Outer-cycle recognition for 2-connected outerplanar graphs.

use super::OuterplanarError;
use crate::graph::Graph;

/// Cyclic numbering of the vertices along the outer face.
///
/// Position `p` holds vertex `order[p]`; positions wrap modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterCycle {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl OuterCycle {
    /// Builds a cycle from a vertex sequence without checking it against a
    /// graph.
    pub fn from_order(order: Vec<usize>) -> Self {
        let mut position = vec![usize::MAX; order.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        Self { order, position }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// `p ⊕ d`.
    pub fn add(&self, p: usize, d: usize) -> usize {
        (p + d) % self.len()
    }

    /// `p ⊖ d`.
    pub fn sub(&self, p: usize, d: usize) -> usize {
        (p + self.len() - d % self.len()) % self.len()
    }

    /// Edges of `graph` that are not cycle edges, as position pairs
    /// `(p, q)` with `p < q`.
    pub fn chords(&self, graph: &Graph) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (p, q) = (self.position[u], self.position[v]);
                (p.min(q), p.max(q))
            })
            .filter(|&(p, q)| q - p != 1 && !(p == 0 && q == n - 1))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether the vertex set `set` (by membership flag) occupies one
    /// contiguous circular arc. The empty and full sets count as arcs.
    pub fn is_arc(&self, member: &[bool]) -> bool {
        let n = self.len();
        let starts = (0..n)
            .filter(|&p| member[self.order[p]] && !member[self.order[self.sub(p, 1)]])
            .count();
        starts <= 1
    }
}

/// Identifies the outer cycle of a 2-connected outerplanar graph.
///
/// An edge `uv` lies on the outer cycle iff deleting both endpoints leaves
/// the graph connected. The resulting edge set is then checked to form a
/// Hamiltonian cycle whose chords do not cross. Numbering starts at vertex 0
/// and proceeds towards its smaller cycle neighbour.
pub fn find_outer_cycle(graph: &Graph) -> Result<OuterCycle, OuterplanarError> {
    let n = graph.n();
    match n {
        0 => return Err(OuterplanarError::NotOuterplanar2Connected),
        1 => return Ok(OuterCycle::from_order(vec![0])),
        2 if graph.m() == 1 => return Ok(OuterCycle::from_order(vec![0, 1])),
        3 if graph.m() == 3 => return Ok(OuterCycle::from_order(vec![0, 1, 2])),
        2 | 3 => return Err(OuterplanarError::NotOuterplanar2Connected),
        _ => {}
    }
    if graph.m() > 2 * n - 3 || !graph.is_connected() {
        return Err(OuterplanarError::NotOuterplanar2Connected);
    }
    let mut ring: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in graph.edges() {
        if graph.components_without(&[u, v]) == 1 {
            ring[u].push(v);
            ring[v].push(u);
            if ring[u].len() > 2 || ring[v].len() > 2 {
                return Err(OuterplanarError::NotOuterplanar2Connected);
            }
        }
    }
    if ring.iter().any(|r| r.len() != 2) {
        return Err(OuterplanarError::NotOuterplanar2Connected);
    }
    let mut order = Vec::with_capacity(n);
    let mut prev = 0;
    let mut cur = ring[0][0].min(ring[0][1]);
    order.push(0);
    while cur != 0 {
        if order.len() == n {
            return Err(OuterplanarError::NotOuterplanar2Connected);
        }
        order.push(cur);
        let next = if ring[cur][0] == prev {
            ring[cur][1]
        } else {
            ring[cur][0]
        };
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(OuterplanarError::NotOuterplanar2Connected);
    }
    let cycle = OuterCycle::from_order(order);
    if !chords_nest(&cycle.chords(graph)) {
        return Err(OuterplanarError::NotOuterplanar2Connected);
    }
    Ok(cycle)
}

/// Checks that no two chords `(p, q)` cross, i.e. no `p1 < p2 < q1 < q2`.
fn chords_nest(chords: &[(usize, usize)]) -> bool {
    let mut sorted = chords.to_vec();
    sorted.sort_unstable_by_key(|&(p, q)| (p, std::cmp::Reverse(q)));
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for (p, q) in sorted {
        while stack.last().is_some_and(|&(_, tq)| tq <= p) {
            stack.pop();
        }
        if let Some(&(tp, tq)) = stack.last() {
            if tp < p && tq < q {
                return false;
            }
        }
        stack.push((p, q));
    }
    true
}
