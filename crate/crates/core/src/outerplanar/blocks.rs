//! Reduction from connected outerplanar graphs to their 2-connected blocks.

use num_traits::{CheckedAdd, Zero};

use super::{find_outer_cycle, solve_outerplanar_2conn, OuterCycle, OuterplanarError};
use crate::cost::{Cost, CostError};
use crate::dp::SolveError;
use crate::graph::Graph;
use crate::instance::{Instance, OrderedHamPath};
use crate::order::PartialOrder;

/// Vertex sets of the 2-connected blocks (bridges count as blocks),
/// each sorted ascending. Isolated vertices form singleton blocks.
pub fn biconnected_components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        if graph.degree(s) == 0 {
            out.push(vec![s]);
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        let mut stack = vec![(s, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < graph.degree(v) {
                let w = graph.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    edges.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some((p, q)) = edges.pop() {
                        block.push(p);
                        block.push(q);
                        if (p, q) == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            }
        }
    }
    out
}

/// Whether every block is an edge, a vertex, or 2-connected outerplanar.
pub fn is_outerplanar(graph: &Graph) -> bool {
    biconnected_components(graph)
        .iter()
        .all(|b| b.len() <= 2 || find_outer_cycle(&graph.induced(b).expect("valid block")).is_ok())
}

/// Traversal direction along the block path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Blocks of a connected graph whose block-cut tree is a path.
///
/// `cuts[i]` is the cut vertex shared by `blocks[i]` and `blocks[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPath {
    pub blocks: Vec<Vec<usize>>,
    pub cuts: Vec<usize>,
}

pub fn block_path(graph: &Graph) -> Result<BlockPath, OuterplanarError> {
    let n = graph.n();
    let blocks = biconnected_components(graph);
    if blocks.len() == 1 {
        return Ok(BlockPath {
            blocks,
            cuts: Vec::new(),
        });
    }
    if blocks.iter().any(|b| b.len() == 1) {
        return Err(OuterplanarError::BlockTreeNotPath);
    }
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            owners[v].push(i);
        }
    }
    if owners.iter().any(|o| o.len() > 2) {
        return Err(OuterplanarError::BlockTreeNotPath);
    }
    let mut block_cuts: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    for (v, o) in owners.iter().enumerate() {
        if o.len() == 2 {
            block_cuts[o[0]].push(v);
            block_cuts[o[1]].push(v);
        }
    }
    if block_cuts.iter().any(|c| c.len() > 2) {
        return Err(OuterplanarError::BlockTreeNotPath);
    }
    let start = (0..blocks.len())
        .filter(|&i| block_cuts[i].len() == 1)
        .min_by_key(|&i| blocks[i][0])
        .ok_or(OuterplanarError::BlockTreeNotPath)?;
    let mut path = BlockPath {
        blocks: vec![blocks[start].clone()],
        cuts: Vec::new(),
    };
    let (mut cur, mut via) = (start, usize::MAX);
    while let Some(&cut) = block_cuts[cur].iter().find(|&&c| c != via) {
        let next = if owners[cut][0] == cur {
            owners[cut][1]
        } else {
            owners[cut][0]
        };
        path.cuts.push(cut);
        path.blocks.push(blocks[next].clone());
        cur = next;
        via = cut;
    }
    if path.blocks.len() != blocks.len() {
        return Err(OuterplanarError::BlockTreeNotPath);
    }
    Ok(path)
}

impl BlockPath {
    /// Block indices in traversal order.
    pub fn traversal(&self, direction: Direction) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.blocks.len()).collect();
        if direction == Direction::Backward {
            idx.reverse();
        }
        idx
    }

    /// Cut vertices entering and leaving block `i` for the given direction.
    pub fn ports(&self, i: usize, direction: Direction) -> (Option<usize>, Option<usize>) {
        let before = i.checked_sub(1).map(|j| self.cuts[j]);
        let after = self.cuts.get(i).copied();
        match direction {
            Direction::Forward => (before, after),
            Direction::Backward => (after, before),
        }
    }

    /// Whether every order pair `x ≺ y` is compatible with visiting the
    /// blocks in the given direction.
    pub fn compatible(&self, order: &PartialOrder, direction: Direction) -> bool {
        let k = self.blocks.len();
        let mut key = vec![0usize; order.n()];
        for (t, &i) in self.traversal(direction).iter().enumerate() {
            for &v in &self.blocks[i] {
                key[v] = 2 * t + 1;
            }
        }
        for (t, &i) in self.traversal(direction).iter().enumerate().take(k - 1) {
            let (_, exit) = self.ports(i, direction);
            key[exit.expect("inner blocks have an exit")] = 2 * t + 2;
        }
        order.pairs().all(|(x, y)| key[x] <= key[y])
    }

    /// The order on block `i` (relabelled to its sorted local indices)
    /// forcing its entry cut first and exit cut last, or `None` when these
    /// constraints contradict the order.
    pub fn sub_order(
        &self,
        order: &PartialOrder,
        i: usize,
        direction: Direction,
    ) -> Option<PartialOrder> {
        let block = &self.blocks[i];
        let local = |v: usize| block.binary_search(&v).expect("port in block");
        let (entry, exit) = self.ports(i, direction);
        let mut extra = Vec::new();
        for w in 0..block.len() {
            if let Some(e) = entry.map(local) {
                if w != e {
                    extra.push((e, w));
                }
            }
            if let Some(x) = exit.map(local) {
                if w != x {
                    extra.push((w, x));
                }
            }
        }
        order.restrict(block).extend(&extra).ok()
    }
}

/// Solves an instance on an outerplanar graph.
///
/// Graphs whose block-cut tree is not a path have no Hamiltonian path and
/// yield `None`.
pub fn solve_outerplanar(instance: &Instance) -> Result<Option<OrderedHamPath>, OuterplanarError> {
    let graph = instance.graph();
    if instance.n() == 1 {
        return Ok(Some(OrderedHamPath {
            sequence: vec![0],
            cost: Cost::zero(),
        }));
    }
    let components = biconnected_components(graph);
    let mut cycles = Vec::with_capacity(components.len());
    for b in &components {
        let sub = graph.induced(b).expect("valid block");
        match find_outer_cycle(&sub) {
            Ok(c) => cycles.push((b.clone(), c)),
            Err(_) if b.len() == 1 => {}
            Err(_) => return Err(OuterplanarError::NotOuterplanar),
        }
    }
    if instance.trivially_infeasible() {
        return Ok(None);
    }
    let path = match block_path(graph) {
        Ok(p) => p,
        Err(OuterplanarError::BlockTreeNotPath) => return Ok(None),
        Err(e) => return Err(e),
    };
    let aligned: Vec<OuterCycle> = path
        .blocks
        .iter()
        .map(|block| {
            let (_, c) = cycles
                .iter()
                .find(|(b, _)| b == block)
                .expect("cycle per block");
            c.clone()
        })
        .collect();

    let directions: &[Direction] = if path.blocks.len() == 1 {
        &[Direction::Forward]
    } else {
        &[Direction::Forward, Direction::Backward]
    };
    let mut best: Option<OrderedHamPath> = None;
    for &direction in directions {
        if let Some(candidate) = solve_direction(instance, &path, direction, &aligned)? {
            let better = best
                .as_ref()
                .is_none_or(|b| (candidate.cost, &candidate.sequence) < (b.cost, &b.sequence));
            if better {
                best = Some(candidate);
            }
        }
    }
    Ok(best)
}

fn solve_direction(
    instance: &Instance,
    path: &BlockPath,
    direction: Direction,
    cycles: &[OuterCycle],
) -> Result<Option<OrderedHamPath>, OuterplanarError> {
    let order = instance.order();
    if !path.compatible(order, direction) {
        return Ok(None);
    }
    let mut sequence = Vec::with_capacity(instance.n());
    let mut cost = Cost::zero();
    for i in path.traversal(direction) {
        let block = &path.blocks[i];
        let Some(sub_order) = path.sub_order(order, i, direction) else {
            return Ok(None);
        };
        let sub_graph = instance.graph().induced(block).expect("valid block");
        let sub = Instance::new(sub_graph, sub_order).expect("sizes match");
        let Some(part) = solve_outerplanar_2conn(&sub, &cycles[i])? else {
            return Ok(None);
        };
        let skip = usize::from(!sequence.is_empty());
        debug_assert!(skip == 0 || sequence.last() == Some(&block[part.sequence[0]]));
        sequence.extend(part.sequence[skip..].iter().map(|&l| block[l]));
        cost = cost
            .checked_add(&part.cost)
            .ok_or(SolveError::Cost(CostError::ScaleOverflow))?;
    }
    Ok(Some(OrderedHamPath { sequence, cost }))
}
