use super::ReductionError;
use crate::cost::Cost;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::order::{build_order, PartialOrder};

/// Default cap for the exhaustive searches below.
pub const EXHAUSTIVE_CAP: usize = 7;

/// A poset on `A = 0..n` and `B = n..2n` whose strict pairs all go from
/// `A` to `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedBipartitePoset {
    n: usize,
    order: PartialOrder,
}

impl OrientedBipartitePoset {
    /// Builds the poset from pairs `(a, b)` given as global labels.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, ReductionError> {
        for &(u, v) in pairs {
            if u >= n || v < n || v >= 2 * n {
                return Err(ReductionError::NotOriented(u, v));
            }
        }
        let order = build_order(2 * n, pairs).expect("oriented pairs are acyclic");
        Ok(Self { n, order })
    }

    /// Checks an arbitrary order on `2n` elements for orientation.
    pub fn from_order(n: usize, order: PartialOrder) -> Result<Self, ReductionError> {
        let pairs: Vec<_> = order.pairs().collect();
        Self::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.order.less(a, self.n + b)
    }
}

/// Square 0/1 matrix; rows are `A`, columns are `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroOneMatrix {
    rows: Vec<Vec<bool>>,
}

impl ZeroOneMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self, ReductionError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(ReductionError::NotSquare);
        }
        Ok(Self { rows })
    }

    /// Matrix number `code` among the `2^(n·n)` matrices of size `n`,
    /// entry `(i, j)` taken from bit `i·n + j`.
    pub fn from_code(n: usize, code: u64) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| code >> (i * n + j) & 1 == 1).collect())
            .collect();
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    /// Rows and columns rearranged so that new row `i` is old row
    /// `rows[i]` and new column `j` is old column `cols[j]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| self.rows[r][c]).collect())
                .collect(),
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| !self.rows[i][j]))
    }
}

pub fn poset_to_matrix(p: &OrientedBipartitePoset) -> ZeroOneMatrix {
    let n = p.n;
    ZeroOneMatrix {
        rows: (0..n)
            .map(|a| (0..n).map(|b| p.less(a, b)).collect())
            .collect(),
    }
}

pub fn matrix_to_poset(m: &ZeroOneMatrix) -> OrientedBipartitePoset {
    let n = m.n();
    let pairs: Vec<_> = (0..n)
        .flat_map(|a| {
            (0..n)
                .filter(move |&b| m.get(a, b))
                .map(move |b| (a, n + b))
        })
        .collect();
    OrientedBipartitePoset::new(n, &pairs).expect("matrix pairs are oriented")
}

/// Steps `perm` to the next permutation in lexicographic order; returns
/// `false` after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len())
        .rev()
        .find(|&j| perm[j] > perm[i - 1])
        .unwrap();
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Row and column permutations making `m` upper triangular, found by
/// trying every pair of permutations.
pub fn is_triangularizable(
    m: &ZeroOneMatrix,
    cap: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, ReductionError> {
    let n = m.n();
    if n > cap {
        return Err(ReductionError::SizeGuard { n, cap });
    }
    let mut rows: Vec<usize> = (0..n).collect();
    loop {
        let mut cols: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|i| (0..i).all(|j| !m.get(rows[i], cols[j])));
            if ok {
                return Ok(Some((rows, cols)));
            }
            if !next_permutation(&mut cols) {
                break;
            }
        }
        if !next_permutation(&mut rows) {
            return Ok(None);
        }
    }
}

/// An alternating linear extension together with the orderings of `A`
/// and `B` it induces (1-based ranks, indexed by element within its side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingExtensionWitness {
    pub tau: Vec<usize>,
    pub sigma_a: Vec<usize>,
    pub sigma_b: Vec<usize>,
}

impl AlternatingExtensionWitness {
    fn from_tau(n: usize, tau: Vec<usize>) -> Self {
        let mut sigma_a = vec![0; n];
        let mut sigma_b = vec![0; n];
        for (i, &v) in tau.iter().enumerate() {
            let pos = i + 1;
            if v < n {
                sigma_a[v] = pos.div_ceil(2);
            } else {
                sigma_b[v - n] = pos / 2;
            }
        }
        Self {
            tau,
            sigma_a,
            sigma_b,
        }
    }

    /// `σ_A(u) ≤ σ_B(v)` for every `u ≺ v`.
    pub fn right_successor(&self, p: &OrientedBipartitePoset) -> bool {
        let n = p.n();
        (0..n).all(|a| (0..n).all(|b| !p.less(a, b) || self.sigma_a[a] <= self.sigma_b[b]))
    }
}

/// Searches for a linear extension whose odd positions are exactly `A`.
pub fn has_alternating_extension(
    p: &OrientedBipartitePoset,
    cap: usize,
) -> Result<Option<AlternatingExtensionWitness>, ReductionError> {
    let n = p.n;
    if n > cap {
        return Err(ReductionError::SizeGuard { n, cap });
    }
    let mut used = vec![false; 2 * n];
    let mut tau = Vec::with_capacity(2 * n);
    if extend(p, &mut used, &mut tau) {
        Ok(Some(AlternatingExtensionWitness::from_tau(n, tau)))
    } else {
        Ok(None)
    }
}

fn extend(p: &OrientedBipartitePoset, used: &mut [bool], tau: &mut Vec<usize>) -> bool {
    let n = p.n;
    if tau.len() == 2 * n {
        return true;
    }
    let side = if tau.len().is_multiple_of(2) { 0..n } else { n..2 * n };
    for v in side {
        if used[v] || p.order.predecessors(v).iter().any(|&u| !used[u]) {
            continue;
        }
        used[v] = true;
        tau.push(v);
        if extend(p, used, tau) {
            return true;
        }
        tau.pop();
        used[v] = false;
    }
    false
}

/// The poset on the complete bipartite graph `K_{n,n}` with parts `A`
/// and `B`. Optional costs follow the edge order `(a, n + b)`, row-major.
pub fn bipartite_pohpp_encode(p: &OrientedBipartitePoset, costs: Option<Vec<Cost>>) -> Instance {
    let n = p.n;
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, n + b)))
        .collect();
    let mut graph = Graph::new(2 * n, &edges).expect("simple bipartite graph");
    if let Some(c) = costs {
        graph = graph.set_costs(c).expect("one cost per edge");
    }
    Instance::new(graph, p.order.clone()).expect("sizes match")
}

/// The complete split graph with independent set `A ∪ {a*}` and clique
/// `B`, where `a* = 2n` must come after every other vertex.
pub fn complete_split_encode(p: &OrientedBipartitePoset) -> Instance {
    let n = p.n;
    let star = 2 * n;
    let mut edges = Vec::new();
    for b in n..2 * n {
        for a in 0..n {
            edges.push((a, b));
        }
        for c in b + 1..2 * n {
            edges.push((b, c));
        }
        edges.push((b, star));
    }
    let graph = Graph::new(2 * n + 1, &edges).expect("simple split graph");
    let mut pairs: Vec<_> = p.order.pairs().collect();
    pairs.extend((0..2 * n).map(|v| (v, star)));
    let order = build_order(2 * n + 1, &pairs).expect("a* is a fresh maximum");
    Instance::new(graph, order).expect("sizes match")
}
