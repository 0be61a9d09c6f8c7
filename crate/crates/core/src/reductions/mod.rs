//! Hardness constructions: bipartite and split encodings of alternating
//! linear extensions, and the multicolored-clique gadget.

mod bipartite;
mod mcp;

pub use bipartite::{
    bipartite_pohpp_encode, complete_split_encode, has_alternating_extension, is_triangularizable,
    matrix_to_poset, poset_to_matrix, AlternatingExtensionWitness, OrientedBipartitePoset,
    ZeroOneMatrix, EXHAUSTIVE_CAP,
};
pub use mcp::{mcp_bruteforce, mcp_to_pohpp, GadgetLayout, MulticoloredGraph, MCP_CAP};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("pair ({0}, {1}) does not go from A to B")]
    NotOriented(usize, usize),
    #[error("size {n} exceeds the exhaustive-search cap of {cap}")]
    SizeGuard { n: usize, cap: usize },
    #[error("bad coloring: {0}")]
    BadColoring(String),
    #[error("matrix is not square")]
    NotSquare,
}
