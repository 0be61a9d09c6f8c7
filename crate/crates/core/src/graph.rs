//! Simple undirected graphs on vertices `0..n` with optional exact costs.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::cost::Cost;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("either every edge carries a cost or none does")]
    MixedCosts,
    #[error("{given} costs supplied for {edges} edges")]
    CostCount { given: usize, edges: usize },
}

/// A simple undirected graph.
///
/// Edges are stored normalised (`u < v`) and sorted. When costs are present
/// there is exactly one per edge, parallel to [`Graph::edges`]. An adjacency
/// bit matrix answers `has_edge` in constant time.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    costs: Option<Vec<Cost>>,
    adjacency: Vec<Vec<usize>>,
    matrix: FixedBitSet,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.costs == other.costs
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds an unweighted graph.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    /// Builds a graph where every edge carries a cost.
    pub fn with_costs(n: usize, edges: &[(usize, usize, Cost)]) -> Result<Self, GraphError> {
        Self::build(n, edges.iter().map(|&(u, v, c)| (u, v, Some(c))))
    }

    fn build(
        n: usize,
        input: impl Iterator<Item = (usize, usize, Option<Cost>)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut raw = Vec::new();
        let mut weighted = None;
        for (u, v, c) in input {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            match (weighted, c.is_some()) {
                (None, w) => weighted = Some(w),
                (Some(a), b) if a != b => return Err(GraphError::MixedCosts),
                _ => {}
            }
            raw.push((u.min(v), u.max(v), c));
        }
        raw.sort_by_key(|&(u, v, _)| (u, v));
        for pair in raw.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        let edges: Vec<_> = raw.iter().map(|&(u, v, _)| (u, v)).collect();
        let costs = if weighted == Some(true) {
            Some(raw.iter().map(|&(_, _, c)| c.unwrap()).collect())
        } else {
            None
        };
        let mut adjacency = vec![Vec::new(); n];
        let mut matrix = FixedBitSet::with_capacity(n * n);
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
            matrix.insert(u * n + v);
            matrix.insert(v * n + u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            costs,
            adjacency,
            matrix,
        })
    }

    /// Returns a copy carrying the given costs, one per edge in
    /// [`Graph::edges`] order.
    pub fn set_costs(&self, costs: Vec<Cost>) -> Result<Self, GraphError> {
        if costs.len() != self.edges.len() {
            return Err(GraphError::CostCount {
                given: costs.len(),
                edges: self.edges.len(),
            });
        }
        let mut g = self.clone();
        g.costs = Some(costs);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn costs(&self) -> Option<&[Cost]> {
        self.costs.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.costs.is_some()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix.contains(u * self.n + v)
    }

    /// Exact cost of edge `uv`; unweighted graphs report 1 for every edge.
    pub fn cost(&self, u: usize, v: usize) -> Option<Cost> {
        let key = (u.min(v), u.max(v));
        let idx = self.edges.binary_search(&key).ok()?;
        Some(match &self.costs {
            Some(c) => c[idx],
            None => Cost::from_integer(1),
        })
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]) <= 1
    }

    /// Number of connected components after deleting `removed`.
    pub fn components_without(&self, removed: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Induced subgraph on `vertices` (relabelled `0..len` in the given
    /// order), keeping costs.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                let c = self.costs.as_ref().map(|c| c[idx]);
                edges.push((local[u], local[v], c));
            }
        }
        Self::build(vertices.len(), edges.into_iter())
    }

    /// Graphviz rendering, with costs as edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            match &self.costs {
                Some(c) => out.push_str(&format!(
                    "  {u} -- {v} [label=\"{}\"];\n",
                    crate::cost::format_cost(&c[idx])
                )),
                None => out.push_str(&format!("  {u} -- {v};\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::OutOfRange(0, 2, 2))
        );
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
    }

    #[test]
    fn adjacency_queries() {
        let g = Graph::new(4, &[(2, 0), (0, 1), (3, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
        assert!(!g.has_edge(1, 3));
        assert_eq!(g.neighbors(2), &[0, 3]);
        assert_eq!(g.cost(3, 2), Some(Cost::from_integer(1)));
        assert_eq!(g.cost(1, 3), None);
        assert!(g.is_connected());
        assert_eq!(g.components_without(&[0]), 2);
    }

    #[test]
    fn costs_follow_edges() {
        let g = Graph::with_costs(3, &[(1, 2, Cost::new(5, 2)), (0, 1, Cost::from_integer(3))])
            .unwrap();
        assert_eq!(g.cost(0, 1), Some(Cost::from_integer(3)));
        assert_eq!(g.cost(2, 1), Some(Cost::new(5, 2)));
        let sub = g.induced(&[2, 1]).unwrap();
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.cost(0, 1), Some(Cost::new(5, 2)));
    }
}
