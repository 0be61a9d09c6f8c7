//! Partial orders over vertex indices and the poset measures the solvers
//! depend on: width with a witnessing chain partition, height, and
//! distance to linear order.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("precedence ({0}, {1}) references an element outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("precedence pairs contain a cycle through element {0}")]
    CycleDetected(usize),
    #[error("sequence is not a permutation of 0..{0}")]
    NotAPermutation(usize),
}

/// A strict partial order on `0..n`, stored transitively closed.
///
/// Only the strict part `u ≺ v` (with `u != v`) is kept; reflexive pairs are
/// implicit. Each element carries its full (closed) predecessor and
/// successor lists in ascending order.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    n: usize,
    above: Vec<FixedBitSet>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

impl PartialEq for PartialOrder {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.above == other.above
    }
}

impl Eq for PartialOrder {}

/// Builds the transitive closure of `pairs` as a strict order on `0..n`.
///
/// Pairs `(v, v)` are reflexive and ignored. Any cycle among distinct
/// elements is rejected.
pub fn build_order(n: usize, pairs: &[(usize, usize)]) -> Result<PartialOrder, OrderError> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(u, v) in pairs {
        if u >= n || v >= n {
            return Err(OrderError::OutOfRange(u, v, n));
        }
        if u != v {
            out[u].push(v);
            indegree[v] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        topo.push(u);
        for &v in &out[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if topo.len() < n {
        let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap();
        return Err(OrderError::CycleDetected(stuck));
    }
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    for &u in topo.iter().rev() {
        let mut row = FixedBitSet::with_capacity(n);
        for &w in &out[u] {
            row.insert(w);
            row.union_with(&above[w]);
        }
        above[u] = row;
    }
    Ok(PartialOrder::from_rows(n, above))
}

impl PartialOrder {
    fn from_rows(n: usize, above: Vec<FixedBitSet>) -> Self {
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        for (u, row) in above.iter().enumerate() {
            for v in row.ones() {
                succs[u].push(v);
                preds[v].push(u);
            }
        }
        Self {
            n,
            above,
            preds,
            succs,
        }
    }

    /// The order with no strict pairs.
    pub fn trivial(n: usize) -> Self {
        Self::from_rows(n, vec![FixedBitSet::with_capacity(n); n])
    }

    /// The total order listing elements in the given sequence.
    pub fn total(sequence: &[usize]) -> Result<Self, OrderError> {
        let pairs: Vec<_> = sequence.windows(2).map(|w| (w[0], w[1])).collect();
        let n = sequence.len();
        if !is_permutation(sequence, n) {
            return Err(OrderError::NotAPermutation(n));
        }
        build_order(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `u ≺ v`.
    #[inline]
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.above[u].contains(v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.less(u, v) || self.less(v, u)
    }

    /// All `u` with `u ≺ v`, ascending.
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.preds[v]
    }

    /// All `w` with `v ≺ w`, ascending.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succs[v]
    }

    /// Successor set of `v` as a bit set.
    pub fn successor_set(&self, v: usize) -> &FixedBitSet {
        &self.above[v]
    }

    pub fn is_minimal(&self, v: usize) -> bool {
        self.preds[v].is_empty()
    }

    /// Number of strict pairs.
    pub fn len(&self) -> usize {
        self.succs.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.succs.iter().all(Vec::is_empty)
    }

    /// Every strict pair `(u, v)`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// The cover relation: pairs `u ≺ v` with nothing strictly between.
    /// Its closure is this order again.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut covered = self.above[u].clone();
            for &w in &self.succs[u] {
                covered.difference_with(&self.above[w]);
            }
            out.extend(covered.ones().map(|v| (u, v)));
        }
        out
    }

    /// Restriction to `elements`, relabelled `0..len` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Self {
        let k = elements.len();
        let mut above = vec![FixedBitSet::with_capacity(k); k];
        for (i, &u) in elements.iter().enumerate() {
            for (j, &v) in elements.iter().enumerate() {
                if self.less(u, v) {
                    above[i].insert(j);
                }
            }
        }
        Self::from_rows(k, above)
    }

    /// This order plus `extra` pairs, closed again. Fails when the extra
    /// pairs create a cycle.
    pub fn extend(&self, extra: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut pairs = self.cover_pairs();
        pairs.extend_from_slice(extra);
        build_order(self.n, &pairs)
    }

    /// Elements sorted into a linear extension (by predecessor count, then
    /// index).
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (self.preds[v].len(), v));
        order
    }
}

pub(crate) fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// True iff `seq` lists every `u ≺ v` with `u` first.
pub fn is_linear_extension(seq: &[usize], order: &PartialOrder) -> Result<bool, OrderError> {
    let n = order.n();
    if !is_permutation(seq, n) {
        return Err(OrderError::NotAPermutation(n));
    }
    let mut position = vec![0usize; n];
    for (i, &v) in seq.iter().enumerate() {
        position[v] = i;
    }
    Ok(order.pairs().all(|(u, v)| position[u] < position[v]))
}

/// A partition of the ground set into chains, each listed bottom-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    chains: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// `(chain, position)` of every element; positions are 0-based.
    pub fn locate(&self, n: usize) -> Vec<(usize, usize)> {
        let mut at = vec![(usize::MAX, usize::MAX); n];
        for (c, chain) in self.chains.iter().enumerate() {
            for (p, &v) in chain.iter().enumerate() {
                at[v] = (c, p);
            }
        }
        at
    }
}

/// Minimum chain partition (Dilworth) via a maximum matching in the split
/// bipartite graph of the closed order: each matched pair `u → v` links `u`
/// directly below `v` in one chain.
///
/// Chains are ordered by their bottom element.
pub fn chain_decomposition(order: &PartialOrder) -> ChainDecomposition {
    let n = order.n();
    let adj: Vec<&[usize]> = (0..n).map(|u| order.successors(u)).collect();
    let (next, prev) = hopcroft_karp(n, n, &adj);
    let mut chains = Vec::new();
    for start in 0..n {
        if prev[start].is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(nx) = next[cur] {
            chain.push(nx);
            cur = nx;
        }
        chains.push(chain);
    }
    ChainDecomposition { chains }
}

/// Size of the largest antichain.
pub fn width(order: &PartialOrder) -> usize {
    chain_decomposition(order).len()
}

/// Length of a longest chain for every element ending at it.
pub(crate) fn chain_lengths_below(order: &PartialOrder) -> Vec<usize> {
    let mut len = vec![1usize; order.n()];
    for v in order.topological_order() {
        len[v] = 1 + order
            .predecessors(v)
            .iter()
            .map(|&u| len[u])
            .max()
            .unwrap_or(0);
    }
    len
}

/// Size of the longest chain (0 for the empty ground set).
pub fn height(order: &PartialOrder) -> usize {
    chain_lengths_below(order).into_iter().max().unwrap_or(0)
}

/// Distance to linear order: the number of elements off a longest chain.
pub fn dlo(order: &PartialOrder) -> usize {
    order.n() - height(order)
}

/// Hopcroft–Karp maximum matching. `adj[u]` lists right vertices adjacent
/// to left vertex `u`. Returns the partner of each left and right vertex.
fn hopcroft_karp(
    left: usize,
    right: usize,
    adj: &[&[usize]],
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    const FREE: usize = usize::MAX;
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    let mut dist = vec![0usize; left];
    let mut queue = VecDeque::new();
    loop {
        // Layered BFS from free left vertices.
        queue.clear();
        let mut found = false;
        for u in 0..left {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in adj[u] {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        let mut it = vec![0usize; left];
        for root in 0..left {
            if match_l[root] != FREE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if it[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][it[u]];
                it[u] += 1;
                let w = match_r[v];
                if w == FREE {
                    // Augment along the stack.
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = match_l[u];
                        match_l[u] = v;
                        match_r[v] = u;
                        v = prev;
                    }
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }
    let wrap = |x: usize| (x != FREE).then_some(x);
    (
        match_l.into_iter().map(wrap).collect(),
        match_r.into_iter().map(wrap).collect(),
    )
}
