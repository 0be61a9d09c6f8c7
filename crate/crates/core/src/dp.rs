//! Pieces shared by the exact solvers: error type, state budgets and the
//! level ranking that makes optimal paths lexicographically minimal.

use thiserror::Error;

use crate::cost::{CostError, ScaledCosts};
use crate::instance::OrderedHamPath;

/// Default cap on dynamic-programming table entries.
pub const DEFAULT_STATE_BUDGET: usize = 100_000_000;

/// Unreachable table entry.
pub(crate) const INF: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance has {n} vertices, above the exhaustive-search cap of {cap}")]
    SizeGuard { n: usize, cap: usize },
    #[error("dynamic program needs {needed} states, above the budget of {budget}")]
    StateBudgetExceeded { needed: u128, budget: usize },
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Ranks the finite entries of one DP level by the lexicographic order of
/// the paths they represent.
///
/// Every entry's path is its predecessor's path plus one vertex, and all
/// paths on one level have equal length, so comparing
/// `(rank of predecessor, last vertex)` compares the full sequences. Equal
/// keys denote equal paths and share a rank.
pub(crate) fn rank_level(keys: &[(u32, u32)]) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
    idx.sort_unstable_by_key(|&i| keys[i as usize]);
    let mut rank = vec![0u32; keys.len()];
    let mut r = 0u32;
    for (pos, &i) in idx.iter().enumerate() {
        if pos > 0 && keys[i as usize] != keys[idx[pos - 1] as usize] {
            r += 1;
        }
        rank[i as usize] = r;
    }
    rank
}

/// Wraps a reconstructed sequence and its scaled total.
pub(crate) fn finish(sequence: Vec<usize>, total: i64, costs: &ScaledCosts) -> OrderedHamPath {
    OrderedHamPath {
        sequence,
        cost: costs.unscale(total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_by_predecessor_then_vertex() {
        let keys = [(1, 0), (0, 5), (0, 2), (2, 1)];
        assert_eq!(rank_level(&keys), vec![2, 1, 0, 3]);
        assert_eq!(rank_level(&[(0, 1), (0, 1), (0, 0)]), vec![1, 1, 0]);
    }
}
