use thiserror::Error;

use crate::algebra::Order;
use crate::seifert::Exclusion;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Seifert invariants: {0}")]
    InvalidInvariants(String),

    #[error("class does not vanish on relation(s) {violated:?}")]
    InvalidClass { violated: Vec<usize> },

    #[error("manifold is excluded: {0}")]
    Excluded(Exclusion),

    #[error("closed Seifert manifold with positive orbifold Euler characteristic has finite fundamental group")]
    FiniteFundamentalGroup,

    #[error("regular fiber has order {order} in H1; pass an explicit assertion if the hypothesis holds for another homomorphism")]
    FiberFiniteOrder { order: Order },

    #[error("base orbifold is non-orientable, so there is no S1-action")]
    NonOrientableBase,

    #[error("invalid plumbing graph: {0}")]
    InvalidGraph(String),

    #[error("node {node}: {source}")]
    Node { node: usize, source: Box<Error> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

impl Error {
    /// True for failures of a theorem hypothesis (as opposed to malformed input).
    pub fn is_hypothesis(&self) -> bool {
        match self {
            Error::FiniteFundamentalGroup | Error::FiberFiniteOrder { .. } => true,
            Error::Node { source, .. } => source.is_hypothesis(),
            _ => false,
        }
    }

    pub(crate) fn at_node(self, node: usize) -> Error {
        Error::Node {
            node,
            source: Box::new(self),
        }
    }
}
