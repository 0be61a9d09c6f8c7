//! Minimum-cost Hamiltonian paths constrained by a partial order.
//!
//! An instance is an undirected graph with optional rational edge costs and
//! a strict partial order on its vertices. A solution visits every vertex
//! once along graph edges, in an order that is a linear extension of the
//! partial order. Several exact solvers are provided, each efficient on a
//! different structural parameter.

pub mod cost;
pub mod dlo;
pub mod dp;
pub mod format;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod order;
pub mod outerplanar;
pub mod reductions;
pub mod report;
pub mod select;
pub mod width;

pub use cost::{format_cost, parse_cost, Cost, CostError};
pub use dlo::{maximum_chain, solve_dlo_dp, DloContext};
pub use dp::{SolveError, DEFAULT_STATE_BUDGET};
pub use format::{emit_instance, parse_instance, parse_instance_file, ParseError};
pub use generate::{generate, GenKind, GenParams};
pub use graph::{Graph, GraphError};
pub use instance::{verify_solution, Instance, InstanceError, OrderedHamPath, VerifyError};
pub use oracle::{count_solutions, solve_bruteforce};
pub use order::{
    build_order, chain_decomposition, dlo as distance_to_linear_order, height, width,
    ChainDecomposition, OrderError, PartialOrder,
};
pub use outerplanar::{find_outer_cycle, solve_outerplanar, solve_outerplanar_2conn, OuterCycle};
pub use report::{solve, SolveReport, Status};
pub use select::{select_algorithm, InstanceStats, Strategy};
pub use width::{solve_width_dp, tsppc_reduce, ChainContext, WidthConfig};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::cost::Cost;
    use crate::graph::Graph;
    use crate::instance::Instance;
    use crate::order::build_order;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// A small connected instance with a random order and, about half the
    /// time, small rational costs.
    pub(crate) fn small_instance(seed: u64, max_n: usize) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=max_n);
        let p: f64 = rng.gen_range(0.2..0.9);
        let q: f64 = rng.gen_range(0.0..0.4);
        let perm = {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        let mut edges = Vec::new();
        for i in 1..n {
            let j = rng.gen_range(0..i);
            edges.push((perm[i].min(perm[j]), perm[i].max(perm[j])));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let mut pairs = Vec::new();
        let topo = {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(q) {
                    pairs.push((topo[i], topo[j]));
                }
            }
        }
        let order = build_order(n, &pairs).unwrap();
        let graph = if rng.gen_bool(0.5) {
            let weighted: Vec<_> = edges
                .iter()
                .map(|&(u, v)| (u, v, Cost::new(rng.gen_range(-2..10), rng.gen_range(1..4))))
                .collect();
            Graph::with_costs(n, &weighted).unwrap()
        } else {
            Graph::new(n, &edges).unwrap()
        };
        Instance::new(graph, order).unwrap()
    }
}
