use std::collections::BTreeSet;

use super::ReductionError;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::order::build_order;

/// Default cap on the `q^k` selections tried by [`mcp_bruteforce`].
pub const MCP_CAP: u64 = 1 << 24;

/// A `k`-colored graph whose color classes all have `q` vertices.
///
/// Colors are `1..=k`. Within a class, vertices are numbered `1..=q` in
/// ascending vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticoloredGraph {
    graph: Graph,
    k: usize,
    q: usize,
    color: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl MulticoloredGraph {
    pub fn new(graph: Graph, k: usize, color: Vec<usize>) -> Result<Self, ReductionError> {
        let n = graph.n();
        if k == 0 {
            return Err(ReductionError::BadColoring("no colors".into()));
        }
        if color.len() != n {
            return Err(ReductionError::BadColoring(format!(
                "{} colors for {n} vertices",
                color.len()
            )));
        }
        if let Some(v) = (0..n).find(|&v| color[v] == 0 || color[v] > k) {
            return Err(ReductionError::BadColoring(format!(
                "vertex {v} has color {} outside 1..={k}",
                color[v]
            )));
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| color[u] == color[v]) {
            return Err(ReductionError::BadColoring(format!(
                "edge {u}-{v} joins two vertices of color {}",
                color[u]
            )));
        }
        let mut classes = vec![Vec::new(); k];
        for v in 0..n {
            classes[color[v] - 1].push(v);
        }
        let q = classes[0].len();
        if q == 0 || classes.iter().any(|c| c.len() != q) {
            return Err(ReductionError::BadColoring(
                "color classes differ in size".into(),
            ));
        }
        Ok(Self {
            graph,
            k,
            q,
            color,
            classes,
        })
    }

    /// Like [`new`](Self::new), but first pads every class with isolated
    /// vertices to the size of the largest.
    pub fn padded(graph: Graph, k: usize, mut color: Vec<usize>) -> Result<Self, ReductionError> {
        let mut sizes = vec![0usize; k + 1];
        for &c in &color {
            if c == 0 || c > k {
                return Err(ReductionError::BadColoring(format!(
                    "color {c} outside 1..={k}"
                )));
            }
            sizes[c] += 1;
        }
        let q = sizes.iter().copied().max().unwrap_or(0).max(1);
        let mut n = graph.n();
        for c in 1..=k {
            for _ in sizes[c]..q {
                color.push(c);
                n += 1;
            }
        }
        let edges = graph.edges().to_vec();
        let padded = Graph::new(n, &edges).expect("same edges, more vertices");
        Self::new(padded, k, color)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    /// Vertex `v^i_p` (1-based color and index).
    pub fn vertex(&self, i: usize, p: usize) -> usize {
        self.classes[i - 1][p - 1]
    }

    /// Whether `v^i_p` and `v^j_r` are adjacent.
    pub fn adjacent(&self, i: usize, p: usize, j: usize, r: usize) -> bool {
        self.graph.has_edge(self.vertex(i, p), self.vertex(j, r))
    }
}

/// A multicolored clique as 1-based class indices `(p_1, …, p_k)`, found
/// by trying every selection in lexicographic order.
pub fn mcp_bruteforce(
    g: &MulticoloredGraph,
    cap: u64,
) -> Result<Option<Vec<usize>>, ReductionError> {
    let (k, q) = (g.k, g.q);
    let total = (q as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(ReductionError::SizeGuard {
            n: total.min(usize::MAX as u64) as usize,
            cap: cap.min(usize::MAX as u64) as usize,
        });
    }
    let mut pick = vec![1usize; k];
    loop {
        let clique = (0..k).all(|i| (i + 1..k).all(|j| g.adjacent(i + 1, pick[i], j + 1, pick[j])));
        if clique {
            return Ok(Some(pick));
        }
        let Some(i) = (0..k).rev().find(|&i| pick[i] < q) else {
            return Ok(None);
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|p| *p = 1);
    }
}

/// Vertex numbering of the gadget: `s`, then `s^1..s^{k+1}`, then for each
/// color `X^i` followed by `W^i` (row-major by `(p, ℓ)`), then `Y`, `z`, `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLayout {
    pub k: usize,
    pub q: usize,
}

impl GadgetLayout {
    pub fn n(&self) -> usize {
        4 + self.k + 3 * self.k * self.q * (self.k + 1)
    }

    fn block(&self) -> usize {
        2 * (self.k + 1) * self.q
    }

    pub fn s(&self) -> usize {
        0
    }

    /// `s^i` for `i ∈ 1..=k+1`.
    pub fn s_at(&self, i: usize) -> usize {
        i
    }

    /// `x^i_j` for `j ∈ 1..=(k+1)q`.
    pub fn x(&self, i: usize, j: usize) -> usize {
        self.k + 2 + (i - 1) * self.block() + (j - 1)
    }

    /// `w^i_{p,ℓ}` for `p ∈ 1..=q`, `ℓ ∈ 0..=k`.
    pub fn w(&self, i: usize, p: usize, l: usize) -> usize {
        self.k + 2 + (i - 1) * self.block() + (self.k + 1) * self.q + (p - 1) * (self.k + 1) + l
    }

    /// `y_j` for `j ∈ 1..=qk(k+1)`.
    pub fn y(&self, j: usize) -> usize {
        self.k + 2 + self.k * self.block() + (j - 1)
    }

    pub fn y_len(&self) -> usize {
        self.q * self.k * (self.k + 1)
    }

    pub fn z(&self) -> usize {
        self.n() - 2
    }

    pub fn t(&self) -> usize {
        self.n() - 1
    }

    /// Human-readable vertex names, indexed by vertex.
    pub fn names(&self) -> Vec<String> {
        let (k, q) = (self.k, self.q);
        let mut names = vec![String::new(); self.n()];
        names[self.s()] = "s".into();
        for i in 1..=k + 1 {
            names[self.s_at(i)] = format!("s^{i}");
        }
        for i in 1..=k {
            for j in 1..=(k + 1) * q {
                names[self.x(i, j)] = format!("x^{i}_{j}");
            }
            for p in 1..=q {
                for l in 0..=k {
                    names[self.w(i, p, l)] = format!("w^{i}_{p},{l}");
                }
            }
        }
        for j in 1..=self.y_len() {
            names[self.y(j)] = format!("y_{j}");
        }
        names[self.z()] = "z".into();
        names[self.t()] = "t".into();
        names
    }
}

/// The gadget instance whose feasibility is equivalent to the existence of
/// a multicolored clique in `g`. Requires `k ≥ 2`.
pub fn mcp_to_pohpp(g: &MulticoloredGraph) -> Result<(Instance, GadgetLayout), ReductionError> {
    let (k, q) = (g.k, g.q);
    if k < 2 {
        return Err(ReductionError::BadColoring("the gadget needs k ≥ 2".into()));
    }
    let lay = GadgetLayout { k, q };
    let n = lay.n();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |u: usize, v: usize| {
        edges.insert((u.min(v), u.max(v)));
    };
    let ws =
        || (1..=k).flat_map(move |i| (1..=q).flat_map(move |p| (0..=k).map(move |l| (i, p, l))));

    add(lay.s(), lay.s_at(1));
    add(lay.z(), lay.s_at(k + 1));
    for a in 1..=lay.y_len() {
        for b in a + 1..=lay.y_len() {
            add(lay.y(a), lay.y(b));
        }
        for (i, p, l) in ws() {
            add(lay.y(a), lay.w(i, p, l));
        }
        add(lay.t(), lay.y(a));
    }
    for i in 1..=k {
        let xs = (k + 1) * q;
        for a in 1..=xs {
            for b in a + 1..=xs {
                add(lay.x(i, a), lay.x(i, b));
            }
            add(lay.x(i, a), lay.s_at(i));
            for p in 1..=q {
                for l in 0..=k {
                    add(lay.x(i, a), lay.w(i, p, l));
                }
            }
        }
        for p in 1..=q {
            add(lay.w(i, p, 0), lay.s_at(i + 1));
        }
    }
    for p in 1..=q {
        add(lay.z(), lay.w(1, p, 1));
        add(lay.w(k, p, k), lay.t());
    }
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                continue;
            }
            for p in 1..=q {
                for r in 1..=q {
                    if !g.adjacent(i, p, j, r) {
                        continue;
                    }
                    add(lay.w(i, p, j), lay.w(j, r, i));
                    if i < j {
                        add(lay.w(i, p, j - 1), lay.w(j, r, i));
                    }
                    if j == i + 1 {
                        add(lay.w(i, p, k), lay.w(j, r, j));
                    }
                }
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let graph = Graph::new(n, &edges).expect("simple gadget graph");

    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((lay.s(), v));
    }
    for i in 1..=k {
        for p in 1..=q {
            for l in 0..=k {
                pairs.push((lay.s_at(i), lay.w(i, p, l)));
            }
        }
        let chain: Vec<usize> = (1..=q)
            .flat_map(|p| (0..=k).map(move |l| (p, l)))
            .map(|(p, l)| lay.w(i, p, l))
            .collect();
        pairs.extend(chain.windows(2).map(|w| (w[0], w[1])));
        for j in 1..(k + 1) * q {
            pairs.push((lay.x(i, j), lay.x(i, j + 1)));
        }
        for j in 1..=(k + 1) * q {
            pairs.push((lay.x(i, j), lay.s_at(i + 1)));
        }
    }
    for j in 1..lay.y_len() {
        pairs.push((lay.y(j), lay.y(j + 1)));
    }
    pairs.push((lay.s_at(k + 1), lay.z()));
    pairs.push((lay.z(), lay.t()));
    for j in 1..=lay.y_len() {
        pairs.push((lay.t(), lay.y(j)));
    }
    let order = build_order(n, &pairs).expect("gadget order is acyclic");
    Ok((Instance::new(graph, order).expect("sizes match"), lay))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::width;
    use crate::width::solve_width_dp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Colors `1..=k`, `q` vertices each, vertex `(i-1)·q + (p-1)`.
    fn colored(k: usize, q: usize, edges: &[(usize, usize)]) -> MulticoloredGraph {
        let color = (0..k * q).map(|v| v / q + 1).collect();
        MulticoloredGraph::new(Graph::new(k * q, edges).unwrap(), k, color).unwrap()
    }

    fn random_colored(rng: &mut ChaCha8Rng, k: usize, q: usize, p: f64) -> MulticoloredGraph {
        let mut edges = Vec::new();
        for u in 0..k * q {
            for v in u + 1..k * q {
                if u / q != v / q && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        colored(k, q, &edges)
    }

    /// Whether `G'[S]` joins `w^1_{p_1,1}` to `t`, with `S` the selected
    /// `U^i_{p_i}` minus their `ℓ = 0` vertices, plus `t`.
    fn validation_path_exists(inst: &Instance, lay: &GadgetLayout, pick: &[usize]) -> bool {
        let k = lay.k;
        let mut inside = vec![false; lay.n()];
        for i in 1..=k {
            for l in 1..=k {
                inside[lay.w(i, pick[i - 1], l)] = true;
            }
        }
        inside[lay.t()] = true;
        let start = lay.w(1, pick[0], 1);
        let mut seen = vec![false; lay.n()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in inst.graph().neighbors(u) {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen[lay.t()]
    }

    fn all_picks(k: usize, q: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|p| (1..=q).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    fn is_clique(g: &MulticoloredGraph, pick: &[usize]) -> bool {
        let k = g.k();
        (0..k).all(|i| (i + 1..k).all(|j| g.adjacent(i + 1, pick[i], j + 1, pick[j])))
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(
            mcp_bruteforce(&colored(2, 1, &[(0, 1)]), MCP_CAP).unwrap(),
            Some(vec![1, 1])
        );
        assert_eq!(mcp_bruteforce(&colored(2, 1, &[]), MCP_CAP).unwrap(), None);
    }

    #[test]
    fn coloring_is_validated() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(MulticoloredGraph::new(g.clone(), 2, vec![1, 1]).is_err());
        assert!(MulticoloredGraph::new(g.clone(), 2, vec![1, 3]).is_err());
        let three = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(MulticoloredGraph::new(three.clone(), 2, vec![1, 2, 2]).is_err());
        let padded = MulticoloredGraph::padded(three, 2, vec![1, 2, 2]).unwrap();
        assert_eq!((padded.q(), padded.graph().n()), (2, 4));
    }

    #[test]
    fn layout_sizes() {
        let lay = GadgetLayout { k: 2, q: 2 };
        assert_eq!(lay.n(), 42);
        assert_eq!(GadgetLayout { k: 3, q: 2 }.n(), 79);
        let names = lay.names();
        assert!(names.iter().all(|s| !s.is_empty()));
        let unique: BTreeSet<_> = names.iter().collect();
        assert_eq!(unique.len(), 42);
        assert_eq!((lay.z(), lay.t()), (40, 41));
    }

    #[test]
    fn gadget_examples() {
        // Vertices 0, 1 have color 1; 2, 3 have color 2.
        let with_clique = colored(2, 2, &[(0, 2)]);
        let (inst, lay) = mcp_to_pohpp(&with_clique).unwrap();
        assert_eq!(inst.n(), 42);
        assert_eq!(width(inst.order()), 3);
        let path = solve_width_dp(&inst).unwrap().expect("clique gives a path");
        let at = path
            .sequence
            .iter()
            .position(|&v| v == lay.s_at(3))
            .unwrap();
        assert_eq!(path.sequence[at + 1], lay.z());
        assert_eq!(path.sequence[at + 2], lay.w(1, 1, 1));

        let (none, _) = mcp_to_pohpp(&colored(2, 2, &[])).unwrap();
        assert_eq!(solve_width_dp(&none).unwrap(), None);
    }

    #[test]
    fn validation_paths_detect_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (k, q) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            for _ in 0..6 {
                let g = random_colored(&mut rng, k, q, 0.6);
                let (inst, lay) = mcp_to_pohpp(&g).unwrap();
                for pick in all_picks(k, q) {
                    assert_eq!(
                        validation_path_exists(&inst, &lay, &pick),
                        is_clique(&g, &pick),
                        "k {k} q {q} pick {pick:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn gadget_equivalence_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in 0..12 {
            let g = random_colored(&mut rng, 2, 2, 0.3);
            let (inst, lay) = mcp_to_pohpp(&g).unwrap();
            assert_eq!(width(inst.order()), 3);
            let clique = mcp_bruteforce(&g, MCP_CAP).unwrap();
            let path = solve_width_dp(&inst).unwrap();
            assert_eq!(clique.is_some(), path.is_some(), "case {case}");
            if let Some(p) = path {
                let at = p.sequence.iter().position(|&v| v == lay.s_at(3)).unwrap();
                assert_eq!(p.sequence[at + 1], lay.z());
            }
        }
    }
}
