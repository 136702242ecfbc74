use thiserror::Error;

use crate::grid::Layer;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Range(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the set is basic, it has no annihilation function")]
    NoKernel,

    #[error("annihilation space has dimension {0}, the irreducible function is not unique")]
    AmbiguousKernel(usize),

    #[error("not an annihilation function: layer {layer} sums to {sum}")]
    NotAnnihilating { layer: Layer, sum: String },

    #[error("graph has a bipartite component on vertices {0:?}")]
    BipartiteComponent(Vec<usize>),

    #[error("refusing infeasible request: {estimate}")]
    Infeasible { estimate: String },
}
