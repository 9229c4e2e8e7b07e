use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Variants fall into three groups that front ends map to distinct exit
/// codes: malformed input, capacity limits, and failed checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed hypergraph: {0}")]
    MalformedHypergraph(String),

    #[error("malformed orientation: {0}")]
    MalformedOrientation(String),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("invalid flip: {0}")]
    InvalidFlip(String),

    #[error("invalid pair: vertices {0} and {1} must be distinct")]
    InvalidPair(usize, usize),

    #[error("orientation is not acyclic")]
    NotAcyclic,

    #[error("target orientation is unreachable under the given restrictions")]
    Unreachable,

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("invalid box instance: {0}")]
    InvalidBox(String),

    #[error("point is not a vertex of the polytope: {0}")]
    NotAVertex(String),

    #[error("invalid PCFCT instance: {0}")]
    InvalidPcfct(String),

    #[error("invalid same-sum partition: {0}")]
    InvalidPartition(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path invariant ({index}) violated at step {step}: {detail}")]
    InvariantViolated {
        index: usize,
        step: usize,
        detail: String,
    },

    #[error("not a base of the matroid: {0}")]
    NotABase(String),

    #[error("oracle is not a matroid rank function: no exchange pair found at step {0}")]
    NotAMatroid(usize),

    #[error("oracle is not the incidence function of a simple graph: {0}")]
    NotAGraphOracle(String),

    #[error("infeasible vector: {0}")]
    Infeasible(String),

    #[error("not a vertex cover: edge {{{0}, {1}}} is uncovered")]
    NotACover(usize, usize),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
