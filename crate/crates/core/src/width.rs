//! Dynamic program over chain-prefix tuples for orders of bounded width.
//!
//! The order is split into a minimum number `k` of chains. A state records
//! how many leading elements of each chain a path has visited and which
//! chain holds its last vertex. Because a valid prefix of a linear extension
//! must take every chain in prefix order, the tuple pins down the visited
//! vertex set, so the table has at most `k · min(n^k, 2^n)` entries.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::cost::ScaledCosts;
use crate::dp::{finish, rank_level, SolveError, DEFAULT_STATE_BUDGET};
use crate::graph::Graph;
use crate::instance::{Instance, OrderedHamPath};
use crate::order::{chain_decomposition, ChainDecomposition, PartialOrder};

/// Chains of a minimum chain partition plus, for every vertex `v` and chain
/// `i`, the number `ξ_i(v)` of leading elements of chain `i` below `v`.
#[derive(Debug, Clone)]
pub struct ChainContext {
    chains: ChainDecomposition,
    k: usize,
    xi: Vec<u32>,
}

impl ChainContext {
    pub fn new(order: &PartialOrder) -> Self {
        let chains = chain_decomposition(order);
        let k = chains.len();
        let n = order.n();
        let at = chains.locate(n);
        let mut xi = vec![0u32; n * k];
        for v in 0..n {
            for &u in order.predecessors(v) {
                let (c, p) = at[u];
                let slot = &mut xi[v * k + c];
                *slot = (*slot).max(p as u32 + 1);
            }
        }
        Self { chains, k, xi }
    }

    pub fn chains(&self) -> &ChainDecomposition {
        &self.chains
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest `j` with `C_i[j] ≺ v` (1-based), or 0.
    pub fn xi(&self, v: usize, chain: usize) -> usize {
        self.xi[v * self.k + chain] as usize
    }

    fn xi_row(&self, v: usize) -> &[u32] {
        &self.xi[v * self.k..(v + 1) * self.k]
    }
}

/// A table key: visited prefix lengths per chain and the chain `omega`
/// holding the last vertex (both 0-based chain indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WidthStateKey {
    pub x: Vec<usize>,
    pub omega: usize,
}

impl WidthStateKey {
    pub fn weight(&self) -> usize {
        self.x.iter().sum()
    }
}

/// Which table layout a run used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Mixed-radix array over all `Π(|C_i| + 1) · k` keys.
    Dense,
    /// Hash map over reachable keys only.
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoragePolicy {
    Auto,
    Dense,
    Sparse,
}

#[derive(Debug, Clone)]
pub struct WidthConfig {
    /// Maximum number of finite table entries.
    pub budget: usize,
    /// `Auto` picks the dense layout only when it has at most this many
    /// slots.
    pub dense_limit: usize,
    pub storage: StoragePolicy,
}

impl Default for WidthConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_STATE_BUDGET,
            dense_limit: 1 << 22,
            storage: StoragePolicy::Auto,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WidthOutcome {
    pub path: Option<OrderedHamPath>,
    /// Finite table entries created.
    pub states: usize,
    pub regime: Regime,
    pub width: usize,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    key: u128,
    cost: i64,
    pred: u32,
    rank: u32,
    last: u32,
}

const NONE: u32 = u32::MAX;

enum Index {
    Dense(Vec<u32>),
    Sparse(FxHashMap<u128, u32>),
}

impl Index {
    fn get(&self, key: u128) -> Option<u32> {
        match self {
            Index::Dense(slots) => {
                let s = slots[key as usize];
                (s != NONE).then_some(s)
            }
            Index::Sparse(map) => map.get(&key).copied(),
        }
    }

    fn insert(&mut self, key: u128, at: u32) {
        match self {
            Index::Dense(slots) => slots[key as usize] = at,
            Index::Sparse(map) => {
                map.insert(key, at);
            }
        }
    }

    /// Keys of different weights never collide, so only the sparse map is
    /// worth clearing between levels.
    fn next_level(&mut self) {
        if let Index::Sparse(map) = self {
            map.clear();
        }
    }
}

/// Solves the instance with the default configuration.
pub fn solve_width_dp(instance: &Instance) -> Result<Option<OrderedHamPath>, SolveError> {
    Ok(solve_width_dp_with(instance, &WidthConfig::default())?.path)
}

pub fn solve_width_dp_with(
    instance: &Instance,
    config: &WidthConfig,
) -> Result<WidthOutcome, SolveError> {
    let ctx = ChainContext::new(instance.order());
    let k = ctx.k();
    let n = instance.n();
    let lens: Vec<usize> = ctx.chains().chains().iter().map(Vec::len).collect();

    // radix[i] = Π_{j<i} (|C_j| + 1); a key is code(x) · k + omega.
    let mut radix = Vec::with_capacity(k);
    let mut product: Option<u128> = Some(1);
    for &len in &lens {
        radix.push(product.unwrap_or(0));
        product = product.and_then(|p| p.checked_mul(len as u128 + 1));
    }
    let slots =
        product
            .and_then(|p| p.checked_mul(k as u128))
            .ok_or(SolveError::StateBudgetExceeded {
                needed: u128::MAX,
                budget: config.budget,
            })?;
    let regime = match config.storage {
        StoragePolicy::Dense => Regime::Dense,
        StoragePolicy::Sparse => Regime::Sparse,
        StoragePolicy::Auto if slots <= config.dense_limit.min(config.budget) as u128 => {
            Regime::Dense
        }
        StoragePolicy::Auto => Regime::Sparse,
    };
    if regime == Regime::Dense && slots > config.budget as u128 {
        return Err(SolveError::StateBudgetExceeded {
            needed: slots,
            budget: config.budget,
        });
    }
    if instance.trivially_infeasible() {
        return Ok(WidthOutcome {
            path: None,
            states: 0,
            regime,
            width: k,
        });
    }
    let costs = ScaledCosts::new(instance.graph())?;
    let chains = ctx.chains().chains();

    let mut index = match regime {
        Regime::Dense => Index::Dense(vec![NONE; slots as usize]),
        Regime::Sparse => Index::Sparse(FxHashMap::default()),
    };
    let mut entries: Vec<Entry> = Vec::new();

    // Weight one: a chain's first element, if it is minimal in the order.
    for (omega, chain) in chains.iter().enumerate() {
        let v = chain[0];
        if instance.order().is_minimal(v) {
            entries.push(Entry {
                key: radix[omega] * k as u128 + omega as u128,
                cost: 0,
                pred: NONE,
                rank: 0,
                last: v as u32,
            });
        }
    }
    assign_ranks(&mut entries, 0);
    let mut level_start = 0;
    let mut x = vec![0usize; k];

    for weight in 1..n {
        let level_end = entries.len();
        index.next_level();
        for e in level_start..level_end {
            let Entry {
                key, cost, last, ..
            } = entries[e];
            let code = key / k as u128;
            decode(code, &radix, &lens, &mut x);
            debug_assert_eq!(x.iter().sum::<usize>(), weight, "level discipline");
            let u = last as usize;
            for omega in 0..k {
                if x[omega] == lens[omega] {
                    continue;
                }
                let v = chains[omega][x[omega]];
                // Every predecessor of v must already be on the path.
                if !ctx
                    .xi_row(v)
                    .iter()
                    .zip(&x)
                    .all(|(&need, &have)| need as usize <= have)
                {
                    continue;
                }
                let Some(step) = costs.get(u, v) else {
                    continue;
                };
                let new_cost = cost + step;
                let new_key = (code + radix[omega]) * k as u128 + omega as u128;
                match index.get(new_key) {
                    None => {
                        if entries.len() >= config.budget {
                            return Err(SolveError::StateBudgetExceeded {
                                needed: entries.len() as u128 + 1,
                                budget: config.budget,
                            });
                        }
                        index.insert(new_key, entries.len() as u32);
                        entries.push(Entry {
                            key: new_key,
                            cost: new_cost,
                            pred: e as u32,
                            rank: 0,
                            last: v as u32,
                        });
                    }
                    Some(at) => {
                        let old = entries[at as usize];
                        let better = new_cost < old.cost
                            || new_cost == old.cost
                                && entries[e].rank < entries[old.pred as usize].rank;
                        if better {
                            let slot = &mut entries[at as usize];
                            slot.cost = new_cost;
                            slot.pred = e as u32;
                        }
                    }
                }
            }
        }
        level_start = level_end;
        assign_ranks(&mut entries, level_start);
        if level_start == entries.len() {
            break;
        }
    }

    let states = entries.len();
    let full: u128 = lens.iter().zip(&radix).map(|(&l, &r)| l as u128 * r).sum();
    let best = entries[level_start..]
        .iter()
        .enumerate()
        .filter(|(_, e)| e.key / k as u128 == full)
        .min_by_key(|(_, e)| (e.cost, e.rank))
        .map(|(i, _)| level_start + i);
    let path = best.map(|mut at| {
        let total = entries[at].cost;
        let mut seq = Vec::with_capacity(n);
        loop {
            seq.push(entries[at].last as usize);
            if entries[at].pred == NONE {
                break;
            }
            at = entries[at].pred as usize;
        }
        seq.reverse();
        finish(seq, total, &costs)
    });
    Ok(WidthOutcome {
        path,
        states,
        regime,
        width: k,
    })
}

fn decode(code: u128, radix: &[u128], lens: &[usize], x: &mut [usize]) {
    for i in 0..radix.len() {
        x[i] = ((code / radix[i]) % (lens[i] as u128 + 1)) as usize;
    }
}

fn assign_ranks(entries: &mut [Entry], from: usize) {
    let level = &entries[from..];
    let keys: Vec<(u32, u32)> = level
        .iter()
        .map(|e| {
            let pred_rank = if e.pred == NONE {
                0
            } else {
                entries[e.pred as usize].rank
            };
            (pred_rank, e.last)
        })
        .collect();
    for (e, r) in entries[from..].iter_mut().zip(rank_level(&keys)) {
        e.rank = r;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TspPcError {
    #[error("start vertex {0} is out of range")]
    StartOutOfRange(usize),
    #[error("start vertex {0} is not below every other vertex")]
    StartNotMinimal(usize),
}

/// Turns a precedence-constrained tour problem rooted at `start` into a
/// path problem: a copy of `start` (same neighbours, same costs) is added
/// as vertex `n` and placed above every other vertex. `start` is placed
/// below every other vertex.
pub fn tsppc_reduce(instance: &Instance, start: usize) -> Result<Instance, TspPcError> {
    let n = instance.n();
    if start >= n {
        return Err(TspPcError::StartOutOfRange(start));
    }
    let g = instance.graph();
    let mut edges: Vec<(usize, usize, Option<crate::cost::Cost>)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (u, v, g.costs().map(|c| c[i])))
        .collect();
    for &w in g.neighbors(start) {
        edges.push((w, n, g.costs().map(|_| g.cost(start, w).unwrap())));
    }
    let graph = if g.is_weighted() {
        let weighted: Vec<_> = edges.iter().map(|&(u, v, c)| (u, v, c.unwrap())).collect();
        Graph::with_costs(n + 1, &weighted)
    } else {
        let plain: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::new(n + 1, &plain)
    }
    .expect("copy of a valid graph");
    let mut pairs = instance.order().cover_pairs();
    pairs.extend((0..n).filter(|&v| v != start).map(|v| (start, v)));
    pairs.extend((0..n).map(|v| (v, n)));
    let order =
        crate::order::build_order(n + 1, &pairs).map_err(|_| TspPcError::StartNotMinimal(start))?;
    Ok(Instance::new(graph, order).expect("sizes agree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Cost;
    use crate::oracle::{solve_bruteforce, DEFAULT_CAP};
    use crate::order::{build_order, width};
    use crate::testutil::small_instance;

    fn inst(n: usize, edges: &[(usize, usize)], pairs: &[(usize, usize)]) -> Instance {
        Instance::new(
            Graph::new(n, edges).unwrap(),
            build_order(n, pairs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn path_graph_trivial_order() {
        let p3 = inst(3, &[(0, 1), (1, 2)], &[]);
        let out = solve_width_dp_with(&p3, &WidthConfig::default()).unwrap();
        assert_eq!(out.width, 3);
        let p = out.path.unwrap();
        assert_eq!(p.cost, Cost::from_integer(2));
        assert_eq!(p.sequence, vec![0, 1, 2]);
    }

    #[test]
    fn c4_matches_oracle() {
        let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[(2, 0)]);
        let dp = solve_width_dp(&c4).unwrap();
        assert_eq!(dp, solve_bruteforce(&c4, DEFAULT_CAP).unwrap());
        assert_eq!(dp.unwrap().sequence, vec![1, 2, 3, 0]);
    }

    #[test]
    fn width_one_is_an_extension_check() {
        let p4 = inst(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 1), (1, 2), (2, 3)]);
        let p = solve_width_dp(&p4).unwrap().unwrap();
        assert_eq!(p.sequence, vec![0, 1, 2, 3]);
        assert_eq!(p.cost, Cost::from_integer(3));
        let blocked = inst(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 2), (2, 1), (1, 3)]);
        assert_eq!(solve_width_dp(&blocked).unwrap(), None);
    }

    #[test]
    fn xi_counts_chain_prefixes() {
        let o = build_order(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let ctx = ChainContext::new(&o);
        assert_eq!(ctx.k(), 2);
        let at = ctx.chains().locate(4);
        let main = at[0].0;
        assert_eq!(ctx.xi(2, main), 2);
        assert_eq!(ctx.xi(3, main), 1);
        assert!((0..2).all(|c| ctx.xi(0, c) == 0));
    }

    #[test]
    fn dense_and_sparse_agree_with_oracle() {
        for seed in 0..300 {
            let instance = small_instance(seed, 8);
            let expected = solve_bruteforce(&instance, DEFAULT_CAP).unwrap();
            for storage in [StoragePolicy::Dense, StoragePolicy::Sparse] {
                let cfg = WidthConfig {
                    storage,
                    ..WidthConfig::default()
                };
                let out = solve_width_dp_with(&instance, &cfg).unwrap();
                assert_eq!(out.path, expected, "seed {seed} {storage:?}");
                let n = instance.n() as u32;
                assert!(out.states <= out.width << n);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let edges: Vec<_> = (0..10)
            .flat_map(|u| (u + 1..10).map(move |v| (u, v)))
            .collect();
        let k10 = inst(10, &edges, &[]);
        let cfg = WidthConfig {
            budget: 1000,
            ..WidthConfig::default()
        };
        assert!(matches!(
            solve_width_dp_with(&k10, &cfg),
            Err(SolveError::StateBudgetExceeded { .. })
        ));
        let sparse = WidthConfig {
            storage: StoragePolicy::Sparse,
            ..cfg
        };
        assert!(matches!(
            solve_width_dp_with(&k10, &sparse),
            Err(SolveError::StateBudgetExceeded { .. })
        ));
    }

    #[test]
    fn tsppc_reduction_on_small_cycles() {
        let g = Graph::with_costs(
            3,
            &[
                (0, 1, Cost::from_integer(2)),
                (1, 2, Cost::from_integer(3)),
                (0, 2, Cost::new(1, 2)),
            ],
        )
        .unwrap();
        let c3 = Instance::new(g, build_order(3, &[(0, 1), (0, 2)]).unwrap()).unwrap();
        let reduced = tsppc_reduce(&c3, 0).unwrap();
        assert_eq!(reduced.n(), 4);
        let best = solve_width_dp(&reduced).unwrap().unwrap();
        assert_eq!(best.cost, Cost::new(11, 2));
        assert_eq!(*best.sequence.last().unwrap(), 3);

        let edges: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let k4 = inst(4, &edges, &[]);
        let reduced = tsppc_reduce(&k4, 0).unwrap();
        assert_eq!(
            solve_width_dp(&reduced).unwrap().unwrap().cost,
            Cost::from_integer(4)
        );
    }

    #[test]
    fn tsppc_rejects_bad_start() {
        let p = inst(3, &[(0, 1), (1, 2)], &[(1, 0)]);
        assert_eq!(
            tsppc_reduce(&p, 3).unwrap_err(),
            TspPcError::StartOutOfRange(3)
        );
        assert_eq!(
            tsppc_reduce(&p, 0).unwrap_err(),
            TspPcError::StartNotMinimal(0)
        );
    }

    #[test]
    fn tsppc_keeps_width() {
        for seed in 0..100 {
            let instance = small_instance(seed, 7);
            let Ok(reduced) = tsppc_reduce(&instance, 0) else {
                continue;
            };
            // The reduction also roots the order at `start`.
            let rooted = instance
                .order()
                .extend(&(1..instance.n()).map(|v| (0, v)).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(width(reduced.order()), width(&rooted), "seed {seed}");
        }
    }
}
