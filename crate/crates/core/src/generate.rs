//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cost::Cost;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::order::{build_order, width, PartialOrder};
use crate::outerplanar::is_outerplanar;
use crate::reductions::{
    bipartite_pohpp_encode, complete_split_encode, mcp_to_pohpp, MulticoloredGraph,
    OrientedBipartitePoset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Random connected graph with a random order.
    Random,
    /// Complete bipartite graph with a random order from `A` to `B`.
    Bipartite,
    /// Complete split graph built from a random order from `A` to `B`.
    Split,
    /// Outerplanar graph, optionally a chain of blocks.
    Outerplanar,
    /// Multicolored-clique gadget on a random colored graph.
    Gadget,
}

impl std::str::FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "random" => GenKind::Random,
            "bipartite" => GenKind::Bipartite,
            "split" => GenKind::Split,
            "outerplanar" => GenKind::Outerplanar,
            "gadget" => GenKind::Gadget,
            _ => return Err(format!("unknown generator `{s}`")),
        })
    }
}

/// Generator parameters; each kind reads the fields it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// Vertices (per side for `Bipartite` and `Split`).
    pub n: usize,
    /// Extra edge probability (`Random`) or cross-color edge probability
    /// (`Gadget`).
    pub p: f64,
    /// Probability of each compatible order pair.
    pub order_density: f64,
    /// Number of blocks (`Outerplanar`).
    pub blocks: usize,
    /// Chord deletion probability (`Outerplanar`).
    pub delete: f64,
    /// Colors and class size (`Gadget`).
    pub k: usize,
    pub q: usize,
    /// Attach random costs with one decimal place.
    pub weighted: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            n: 8,
            p: 0.3,
            order_density: 0.1,
            blocks: 1,
            delete: 0.0,
            k: 2,
            q: 2,
            weighted: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// A generated instance plus descriptive comment lines.
#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    pub comments: Vec<String>,
}

fn bad(msg: impl Into<String>) -> GenError {
    GenError::BadParams(msg.into())
}

fn probability(name: &str, x: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(bad(format!("{name} = {x} is not a probability")))
    }
}

pub fn generate(kind: GenKind, params: &GenParams, seed: u64) -> Result<Generated, GenError> {
    probability("p", params.p)?;
    probability("order density", params.order_density)?;
    probability("delete", params.delete)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comments = vec![format!("generated: {kind:?} seed {seed}").to_lowercase()];
    let instance = match kind {
        GenKind::Random => {
            if params.n == 0 {
                return Err(bad("n must be positive"));
            }
            let g = random_connected(&mut rng, params.n, params.p);
            let order = random_order(&mut rng, params.n, params.order_density);
            finish(&mut rng, g, order, params.weighted)
        }
        GenKind::Bipartite | GenKind::Split => {
            if params.n == 0 {
                return Err(bad("n must be positive"));
            }
            let poset = random_oriented(&mut rng, params.n, params.order_density);
            let inst = if kind == GenKind::Bipartite {
                bipartite_pohpp_encode(&poset, None)
            } else {
                complete_split_encode(&poset)
            };
            comments.push(format!(
                "A = 0..{}, B = {}..{}",
                params.n,
                params.n,
                2 * params.n
            ));
            let order = inst.order().clone();
            finish(&mut rng, inst.graph().clone(), order, params.weighted)
        }
        GenKind::Outerplanar => {
            if params.blocks == 0 || params.n < params.blocks + 1 {
                return Err(bad(
                    "outerplanar needs n ≥ blocks + 1 and at least one block",
                ));
            }
            let g = if params.blocks == 1 {
                outerplanar_2conn(&mut rng, params.n, params.delete)
            } else {
                let sizes = split_sizes(&mut rng, params.n - 1, params.blocks);
                block_chain(&mut rng, &sizes, params.delete)
            };
            let order = random_order(&mut rng, params.n, params.order_density);
            let inst = finish(&mut rng, g, order, params.weighted);
            if !is_outerplanar(inst.graph()) {
                return Err(bad("generated graph failed the outerplanarity check"));
            }
            inst
        }
        GenKind::Gadget => {
            if params.k < 2 || params.q == 0 {
                return Err(bad("gadget needs k ≥ 2 and q ≥ 1"));
            }
            let mcp = random_multicolored(&mut rng, params.k, params.q, params.p);
            let (inst, layout) = mcp_to_pohpp(&mcp).map_err(|e| bad(e.to_string()))?;
            if width(inst.order()) != params.k + 1 {
                return Err(bad("gadget order has unexpected width"));
            }
            comments.extend(gadget_comments(&mcp, &layout.names()));
            let order = inst.order().clone();
            finish(&mut rng, inst.graph().clone(), order, params.weighted)
        }
    };
    Ok(Generated { instance, comments })
}

/// Comment lines naming every gadget vertex and listing the source graph.
pub fn gadget_comments(mcp: &MulticoloredGraph, names: &[String]) -> Vec<String> {
    let mut out = vec![format!("gadget for k = {}, q = {}", mcp.k(), mcp.q())];
    for (v, name) in names.iter().enumerate() {
        out.push(format!("{v} = {name}"));
    }
    let edges: Vec<String> = mcp
        .graph()
        .edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect();
    out.push(format!("source edges: {}", edges.join(" ")));
    out
}

fn finish<R: Rng>(rng: &mut R, g: Graph, order: PartialOrder, weighted: bool) -> Instance {
    let g = if weighted {
        let costs = (0..g.m())
            .map(|_| Cost::new(rng.gen_range(1..=100), 10))
            .collect();
        g.set_costs(costs).expect("one cost per edge")
    } else {
        g
    };
    Instance::new(g, order).expect("sizes agree")
}

/// A random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((perm[i].min(perm[j]), perm[i].max(perm[j])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::new(n, &edges).expect("simple graph")
}

/// A random order from `A = 0..n` to `B = n..2n`, each pair present with
/// probability `density`.
pub fn random_oriented<R: Rng>(rng: &mut R, n: usize, density: f64) -> OrientedBipartitePoset {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in n..2 * n {
            if rng.gen_bool(density) {
                pairs.push((a, b));
            }
        }
    }
    OrientedBipartitePoset::new(n, &pairs).expect("oriented by construction")
}

/// A `k`-colored graph with `q` vertices per color (vertex `(i-1)·q + p-1`
/// is `v^i_p`) and each cross-color pair present with probability `p`.
pub fn random_multicolored<R: Rng>(rng: &mut R, k: usize, q: usize, p: f64) -> MulticoloredGraph {
    let mut edges = Vec::new();
    for u in 0..k * q {
        for v in u + 1..k * q {
            if u / q != v / q && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let color = (0..k * q).map(|v| v / q + 1).collect();
    MulticoloredGraph::new(Graph::new(k * q, &edges).expect("simple"), k, color)
        .expect("proper coloring")
}

/// Splits `total` extra vertices into `parts` block sizes of at least 2.
fn split_sizes<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut extra = vec![1usize; parts];
    for _ in parts..total {
        extra[rng.gen_range(0..parts)] += 1;
    }
    extra.into_iter().map(|e| e + 1).collect()
}

/// Edges of a random triangulated `n`-gon on vertices `0..n` in cyclic
/// order, followed by the deletion of each chord with probability
/// `delete`. The polygon boundary is always kept, so the result stays
/// 2-connected.
pub fn polygon_edges<R: Rng>(rng: &mut R, n: usize, delete: f64) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n)
            .map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))
            .collect(),
    };
    let mut pending = vec![(0..n).collect::<Vec<_>>()];
    while let Some(poly) = pending.pop() {
        let m = poly.len();
        if m < 4 {
            continue;
        }
        let i = rng.gen_range(0..m);
        let gap = rng.gen_range(2..m - 1);
        let j = (i + gap) % m;
        let (u, v) = (poly[i], poly[j]);
        if !rng.gen_bool(delete) {
            edges.push((u.min(v), u.max(v)));
        }
        let (lo, hi) = (i.min(j), i.max(j));
        pending.push(poly[lo..=hi].to_vec());
        let mut other = poly[hi..].to_vec();
        other.extend_from_slice(&poly[..=lo]);
        pending.push(other);
    }
    edges
}

/// Applies a uniformly random relabelling to an edge list.
pub fn shuffle_labels<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out: Vec<_> = edges
        .iter()
        .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
        .collect();
    out.sort_unstable();
    out
}

/// A random 2-connected outerplanar graph on `n ≥ 2` vertices.
pub fn outerplanar_2conn<R: Rng>(rng: &mut R, n: usize, delete: f64) -> Graph {
    let edges = polygon_edges(rng, n, delete);
    Graph::new(n, &shuffle_labels(rng, n, &edges)).expect("valid polygon")
}

/// A connected outerplanar graph whose block-cut tree is a path, with
/// blocks of the given sizes (each at least 2).
pub fn block_chain<R: Rng>(rng: &mut R, sizes: &[usize], delete: f64) -> Graph {
    let mut edges = Vec::new();
    let mut next = 0usize;
    let mut entry: Option<usize> = None;
    for &size in sizes {
        // Local vertex 0 is the shared cut with the previous block.
        let mut local: Vec<usize> = Vec::with_capacity(size);
        match entry {
            Some(c) => local.push(c),
            None => {
                local.push(next);
                next += 1;
            }
        }
        for _ in 1..size {
            local.push(next);
            next += 1;
        }
        for (u, v) in polygon_edges(rng, size, delete) {
            let (a, b) = (local[u], local[v]);
            edges.push((a.min(b), a.max(b)));
        }
        entry = Some(local[rng.gen_range(1..size)]);
    }
    Graph::new(next, &shuffle_labels(rng, next, &edges)).expect("valid chain")
}

/// A random closed order: a hidden random linear order with each
/// compatible pair included independently with probability `density`.
pub fn random_order<R: Rng>(rng: &mut R, n: usize, density: f64) -> PartialOrder {
    let mut hidden: Vec<usize> = (0..n).collect();
    hidden.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((hidden[i], hidden[j]));
            }
        }
    }
    build_order(n, &pairs).expect("acyclic by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::emit_instance;
    use crate::oracle::{solve_bruteforce, DEFAULT_CAP};
    use crate::order::height;
    use crate::outerplanar::{block_path, find_outer_cycle};

    #[test]
    fn generation_is_deterministic() {
        let params = GenParams {
            n: 8,
            ..GenParams::default()
        };
        let a = generate(GenKind::Outerplanar, &params, 7).unwrap();
        let b = generate(GenKind::Outerplanar, &params, 7).unwrap();
        assert_eq!(emit_instance(&a.instance), emit_instance(&b.instance));
    }

    #[test]
    fn full_bipartite_order_is_infeasible() {
        let params = GenParams {
            n: 3,
            order_density: 1.0,
            ..GenParams::default()
        };
        let g = generate(GenKind::Bipartite, &params, 1).unwrap();
        assert_eq!(solve_bruteforce(&g.instance, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn random_example() {
        let params = GenParams {
            n: 6,
            p: 0.8,
            order_density: 0.1,
            ..GenParams::default()
        };
        let g = generate(GenKind::Random, &params, 3).unwrap().instance;
        assert!(g.is_connected());
        let (w, h) = (width(g.order()), height(g.order()));
        assert!(w * h >= g.n() && w + h <= g.n() + 1);
        solve_bruteforce(&g, DEFAULT_CAP).unwrap();
    }

    #[test]
    fn every_kind_validates() {
        let params = GenParams {
            n: 6,
            blocks: 2,
            weighted: true,
            ..GenParams::default()
        };
        for kind in [
            GenKind::Random,
            GenKind::Bipartite,
            GenKind::Split,
            GenKind::Outerplanar,
            GenKind::Gadget,
        ] {
            let g = generate(kind, &params, 11).unwrap();
            assert!(g.instance.weighted());
        }
        let bad = GenParams {
            p: 1.5,
            ..GenParams::default()
        };
        assert!(generate(GenKind::Random, &bad, 0).is_err());
        let bad = GenParams {
            k: 1,
            ..GenParams::default()
        };
        assert!(generate(GenKind::Gadget, &bad, 0).is_err());
    }

    #[test]
    fn polygons_are_outerplanar_and_two_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..30 {
            let full = polygon_edges(&mut rng, n, 0.0);
            if n >= 3 {
                assert_eq!(full.len(), 2 * n - 3);
            }
            let g = outerplanar_2conn(&mut rng, n, 0.4);
            assert!(find_outer_cycle(&g).is_ok(), "n {n}");
        }
    }

    #[test]
    fn chains_form_block_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let sizes: Vec<usize> = (0..rng.gen_range(1..5))
                .map(|_| rng.gen_range(2..6))
                .collect();
            let g = block_chain(&mut rng, &sizes, 0.3);
            assert_eq!(g.n(), 1 + sizes.iter().map(|s| s - 1).sum::<usize>());
            let path = block_path(&g).unwrap();
            assert_eq!(path.blocks.len(), sizes.len());
        }
    }
}
