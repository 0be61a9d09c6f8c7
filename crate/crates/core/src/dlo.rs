//! Dynamic program for orders close to a linear order.
//!
//! With a longest chain `C` of the order fixed, only the `k = n - |C|`
//! off-chain vertices `S` can be visited "out of turn". A state
//! `(Z, i, u)` stands for paths visiting exactly `Z ⊆ S` and the first `i`
//! chain elements, ending at `u`. The table has `2^k · (|C| + 1) · (k + 1)`
//! entries, each filled in `O(k)`.

use crate::cost::ScaledCosts;
use crate::dp::{finish, rank_level, SolveError, DEFAULT_STATE_BUDGET, INF};
use crate::instance::{Instance, OrderedHamPath};
use crate::order::PartialOrder;

/// A longest chain, listed bottom-up. Among longest chains the
/// lexicographically smallest sequence is returned.
pub fn maximum_chain(order: &PartialOrder) -> Vec<usize> {
    let n = order.n();
    if n == 0 {
        return Vec::new();
    }
    // up[v]: length of the longest chain starting at v.
    let mut up = vec![1usize; n];
    for v in order.topological_order().into_iter().rev() {
        up[v] = 1 + order
            .successors(v)
            .iter()
            .map(|&w| up[w])
            .max()
            .unwrap_or(0);
    }
    let h = *up.iter().max().unwrap();
    let mut v = (0..n).find(|&v| up[v] == h).unwrap();
    let mut chain = vec![v];
    while up[v] > 1 {
        v = *order
            .successors(v)
            .iter()
            .find(|&&w| up[w] == up[v] - 1)
            .expect("a longest chain continues");
        chain.push(v);
    }
    chain
}

/// Per-vertex order summaries relative to a longest chain.
#[derive(Debug, Clone)]
pub struct DloContext {
    chain: Vec<usize>,
    off: Vec<usize>,
    /// Bit `s` set iff `off[s] ≺ v`.
    pred_mask: Vec<u64>,
    /// For off-chain `v`: number of leading chain elements below `v`.
    xi: Vec<usize>,
}

/// Largest off-chain set the bit masks can hold.
const MAX_OFF_CHAIN: usize = 63;

impl DloContext {
    pub fn new(order: &PartialOrder) -> Result<Self, SolveError> {
        let n = order.n();
        let chain = maximum_chain(order);
        let mut on_chain = vec![false; n];
        for &v in &chain {
            on_chain[v] = true;
        }
        let off: Vec<usize> = (0..n).filter(|&v| !on_chain[v]).collect();
        if off.len() > MAX_OFF_CHAIN {
            return Err(SolveError::StateBudgetExceeded {
                needed: u128::MAX,
                budget: DEFAULT_STATE_BUDGET,
            });
        }
        let mut slot = vec![usize::MAX; n];
        for (s, &v) in off.iter().enumerate() {
            slot[v] = s;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in chain.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut pred_mask = vec![0u64; n];
        let mut xi = vec![0usize; n];
        for v in 0..n {
            for &u in order.predecessors(v) {
                if slot[u] != usize::MAX {
                    pred_mask[v] |= 1 << slot[u];
                } else {
                    xi[v] = xi[v].max(pos[u]);
                }
            }
        }
        Ok(Self {
            chain,
            off,
            pred_mask,
            xi,
        })
    }

    /// The longest chain `C`, bottom-up.
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    /// Off-chain vertices `S`, ascending.
    pub fn off_chain(&self) -> &[usize] {
        &self.off
    }

    /// `Π_≺(v)`: off-chain vertices below `v`.
    pub fn off_chain_predecessors(&self, v: usize) -> Vec<usize> {
        (0..self.off.len())
            .filter(|&s| self.pred_mask[v] >> s & 1 == 1)
            .map(|s| self.off[s])
            .collect()
    }

    /// `ξ(v)`: the largest `j` with `C[j] ≺ v` (1-based), or 0.
    pub fn xi(&self, v: usize) -> usize {
        self.xi[v]
    }

    /// Whether `u` may follow a path that visited `visited` (a mask over
    /// `S`) and the first `i` chain elements: all of `u`'s off-chain
    /// predecessors are in the mask and, for off-chain `u`, its chain
    /// predecessors lie within the prefix.
    pub fn admissible(&self, visited: u64, i: usize, u: usize) -> bool {
        if self.pred_mask[u] & !visited != 0 {
            return false;
        }
        match self.chain.iter().position(|&c| c == u) {
            Some(p) => p == i,
            None => self.xi[u] <= i,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DloOutcome {
    pub path: Option<OrderedHamPath>,
    /// Finite table entries.
    pub states: usize,
    /// Distance to linear order.
    pub k: usize,
}

pub fn solve_dlo_dp(instance: &Instance) -> Result<Option<OrderedHamPath>, SolveError> {
    Ok(solve_dlo_dp_with(instance, DEFAULT_STATE_BUDGET)?.path)
}

pub fn solve_dlo_dp_with(instance: &Instance, budget: usize) -> Result<DloOutcome, SolveError> {
    let ctx = DloContext::new(instance.order())?;
    let k = ctx.off.len();
    let len = ctx.chain.len();
    let needed = (k as u128 + 1) * (1u128 << k) * (len as u128 + 1);
    if needed > budget as u128 {
        return Err(SolveError::StateBudgetExceeded { needed, budget });
    }
    if instance.trivially_infeasible() {
        return Ok(DloOutcome {
            path: None,
            states: 0,
            k,
        });
    }
    let costs = ScaledCosts::new(instance.graph())?;
    if k == 0 {
        // Already linear: the chain is the only candidate.
        let mut total = 0i64;
        for w in ctx.chain.windows(2) {
            match costs.get(w[0], w[1]) {
                Some(c) => total += c,
                None => {
                    return Ok(DloOutcome {
                        path: None,
                        states: 0,
                        k,
                    })
                }
            }
        }
        return Ok(DloOutcome {
            path: Some(finish(ctx.chain.clone(), total, &costs)),
            states: 1,
            k,
        });
    }

    let table = Table::fill(&ctx, &costs);
    let states = table.finite;
    debug_assert!(states as u128 <= needed);

    let full = (1u64 << k) - 1;
    let best = (0..=k)
        .map(|slot| table.idx(full, len, slot))
        .filter(|&at| table.cost[at] != INF)
        .min_by_key(|&at| (table.cost[at], table.rank[at]));
    let path = best.map(|at| {
        let total = table.cost[at];
        let seq = table.reconstruct(at, &ctx);
        finish(seq, total, &costs)
    });
    Ok(DloOutcome { path, states, k })
}

const NO_PRED: u32 = u32::MAX;

struct Table {
    len: usize,
    k: usize,
    cost: Vec<i64>,
    pred: Vec<u32>,
    rank: Vec<u32>,
    finite: usize,
}

impl Table {
    /// Flat index of `(Z, i, slot)`; slots `0..k` are off-chain members,
    /// slot `k` is `C[i]`.
    #[inline]
    fn idx(&self, mask: u64, i: usize, slot: usize) -> usize {
        ((mask as usize * (self.len + 1)) + i) * (self.k + 1) + slot
    }

    fn vertex(&self, ctx: &DloContext, i: usize, slot: usize) -> usize {
        if slot == self.k {
            ctx.chain[i - 1]
        } else {
            ctx.off[slot]
        }
    }

    fn fill(ctx: &DloContext, costs: &ScaledCosts) -> Self {
        let k = ctx.off.len();
        let len = ctx.chain.len();
        let size = (1usize << k) * (len + 1) * (k + 1);
        let mut t = Table {
            len,
            k,
            cost: vec![INF; size],
            pred: vec![NO_PRED; size],
            rank: vec![0; size],
            finite: 0,
        };
        let n = len + k;
        let mut level: Vec<usize> = Vec::new();

        // Size-one paths.
        if ctx.pred_mask[ctx.chain[0]] == 0 {
            let at = t.idx(0, 1, k);
            t.cost[at] = 0;
            level.push(at);
        }
        for (s, &u) in ctx.off.iter().enumerate() {
            if ctx.pred_mask[u] == 0 && ctx.xi[u] == 0 {
                let at = t.idx(1 << s, 0, s);
                t.cost[at] = 0;
                level.push(at);
            }
        }
        t.rank_level(ctx, &level);
        t.finite += level.len();

        for ell in 2..=n {
            level.clear();
            for mask in 0u64..1 << k {
                let p = mask.count_ones() as usize;
                if p > ell || ell - p > len {
                    continue;
                }
                let i = ell - p;
                // u off-chain, arriving from (Z \ {u}, i, v).
                let mut members = mask;
                while members != 0 {
                    let s = members.trailing_zeros() as usize;
                    members &= members - 1;
                    let u = ctx.off[s];
                    let rest = mask & !(1 << s);
                    if ctx.pred_mask[u] & !rest != 0 || ctx.xi[u] > i {
                        continue;
                    }
                    let at = t.idx(mask, i, s);
                    t.relax_from(ctx, costs, at, u, rest, i);
                    if t.cost[at] != INF {
                        level.push(at);
                    }
                }
                // u = C[i], arriving from (Z, i - 1, v).
                if i >= 1 {
                    let u = ctx.chain[i - 1];
                    if ctx.pred_mask[u] & !mask == 0 {
                        let at = t.idx(mask, i, k);
                        t.relax_from(ctx, costs, at, u, mask, i - 1);
                        if t.cost[at] != INF {
                            level.push(at);
                        }
                    }
                }
            }
            t.rank_level(ctx, &level);
            t.finite += level.len();
        }
        t
    }

    /// Best extension of any finite `(prev_mask, prev_i, v)` by `u`.
    fn relax_from(
        &mut self,
        ctx: &DloContext,
        costs: &ScaledCosts,
        at: usize,
        u: usize,
        prev_mask: u64,
        prev_i: usize,
    ) {
        let k = self.k;
        let mut best: Option<(i64, u32, usize)> = None;
        let mut consider = |t: &Self, slot: usize| {
            let from = t.idx(prev_mask, prev_i, slot);
            if t.cost[from] == INF {
                return;
            }
            let v = t.vertex(ctx, prev_i, slot);
            if let Some(c) = costs.get(v, u) {
                let cand = (t.cost[from] + c, t.rank[from], from);
                if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
        };
        let mut members = prev_mask;
        while members != 0 {
            let s = members.trailing_zeros() as usize;
            members &= members - 1;
            consider(self, s);
        }
        if prev_i >= 1 {
            consider(self, k);
        }
        if let Some((c, _, from)) = best {
            self.cost[at] = c;
            self.pred[at] = from as u32;
        }
    }

    fn last_vertex(&self, ctx: &DloContext, at: usize) -> usize {
        let slot = at % (self.k + 1);
        let i = (at / (self.k + 1)) % (self.len + 1);
        self.vertex(ctx, i, slot)
    }

    fn rank_level(&mut self, ctx: &DloContext, level: &[usize]) {
        let keys: Vec<(u32, u32)> = level
            .iter()
            .map(|&at| {
                let p = self.pred[at];
                let pr = if p == NO_PRED {
                    0
                } else {
                    self.rank[p as usize]
                };
                (pr, self.last_vertex(ctx, at) as u32)
            })
            .collect();
        for (&at, r) in level.iter().zip(rank_level(&keys)) {
            self.rank[at] = r;
        }
    }

    fn reconstruct(&self, mut at: usize, ctx: &DloContext) -> Vec<usize> {
        let mut seq = vec![self.last_vertex(ctx, at)];
        while self.pred[at] != NO_PRED {
            at = self.pred[at] as usize;
            seq.push(self.last_vertex(ctx, at));
        }
        seq.reverse();
        seq
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Cost;
    use crate::graph::Graph;
    use crate::oracle::{solve_bruteforce, SearchState, DEFAULT_CAP};
    use crate::order::{build_order, dlo, height};
    use crate::testutil::small_instance;
    use crate::width::solve_width_dp;
    use rand::{Rng, SeedableRng};

    fn inst(n: usize, edges: &[(usize, usize)], pairs: &[(usize, usize)]) -> Instance {
        Instance::new(
            Graph::new(n, edges).unwrap(),
            build_order(n, pairs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn maximum_chain_examples() {
        let total = PartialOrder::total(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(maximum_chain(&total), vec![4, 2, 0, 1, 3]);
        assert_eq!(maximum_chain(&PartialOrder::trivial(5)), vec![0]);
        let o = build_order(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert_eq!(maximum_chain(&o), vec![0, 2, 3]);
    }

    #[test]
    fn linear_order_bypass() {
        let p4 = inst(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 1), (1, 2), (2, 3)]);
        let out = solve_dlo_dp_with(&p4, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(out.k, 0);
        let p = out.path.unwrap();
        assert_eq!(
            (p.sequence, p.cost),
            (vec![0, 1, 2, 3], Cost::from_integer(3))
        );
        let wrong = inst(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 2), (2, 1), (1, 3)]);
        assert_eq!(solve_dlo_dp(&wrong).unwrap(), None);
    }

    #[test]
    fn c4_with_one_precedence() {
        let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[(2, 0)]);
        let ctx = DloContext::new(c4.order()).unwrap();
        assert_eq!(ctx.chain(), &[2, 0]);
        assert_eq!(ctx.off_chain(), &[1, 3]);
        let p = solve_dlo_dp(&c4).unwrap().unwrap();
        assert_eq!(p.cost, Cost::from_integer(3));
        assert_eq!(Some(p), solve_bruteforce(&c4, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn star_without_feasible_start() {
        // Star centred at 0; the order forces leaves 1 and 2 to come first,
        // and no path can visit two leaves in a row.
        let star = inst(4, &[(0, 1), (0, 2), (0, 3)], &[(1, 0), (2, 0), (1, 3)]);
        assert_eq!(solve_dlo_dp(&star).unwrap(), None);
        assert_eq!(solve_bruteforce(&star, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = small_instance(3, 8);
        let k = dlo(inst.order());
        let len = height(inst.order());
        let needed = (k + 1) * (1 << k) * (len + 1);
        assert!(matches!(
            solve_dlo_dp_with(&inst, needed - 1),
            Err(SolveError::StateBudgetExceeded { .. })
        ));
        assert!(solve_dlo_dp_with(&inst, needed).is_ok());
    }

    #[test]
    fn agrees_with_oracle_and_width_dp() {
        for seed in 0..300 {
            let instance = small_instance(seed, 8);
            let expected = solve_bruteforce(&instance, DEFAULT_CAP).unwrap();
            let out = solve_dlo_dp_with(&instance, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(out.path, expected, "seed {seed}");
            assert_eq!(solve_width_dp(&instance).unwrap(), expected, "seed {seed}");
            let len = height(instance.order());
            assert!(out.states <= (out.k + 1) * (1 << out.k) * (len + 1));
        }
    }

    #[test]
    fn guard_matches_remaining_minima() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for seed in 0..200 {
            let instance = small_instance(seed, 8);
            let ctx = DloContext::new(instance.order()).unwrap();
            let costs = ScaledCosts::new(instance.graph()).unwrap();
            // Walk random linear-extension prefixes, ignoring adjacency.
            let complete =
                Instance::new(complete_graph(instance.n()), instance.order().clone()).unwrap();
            let complete_costs = ScaledCosts::new(complete.graph()).unwrap();
            let _ = costs;
            let mut state = SearchState::new(&complete, &complete_costs);
            loop {
                let mut mask = 0u64;
                let mut i = 0;
                for &v in state.prefix() {
                    match ctx.off_chain().iter().position(|&s| s == v) {
                        Some(s) => mask |= 1 << s,
                        None => i += 1,
                    }
                }
                let minima = state.remaining_minima();
                for u in 0..instance.n() {
                    if state.visited()[u] {
                        continue;
                    }
                    assert_eq!(
                        ctx.admissible(mask, i, u),
                        minima.contains(&u),
                        "seed {seed}"
                    );
                }
                if minima.is_empty() {
                    break;
                }
                state.push(minima[rng.gen_range(0..minima.len())]);
            }
        }
    }

    fn complete_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges).unwrap()
    }
}
