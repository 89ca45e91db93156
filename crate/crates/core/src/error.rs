use thiserror::Error;

use crate::nodeset::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tree notation is empty")]
    EmptyInput,
    #[error("tree notation error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("cover relations contain a directed cycle")]
    CyclicCovers,
    #[error("cover {0} < {1} is implied by transitivity")]
    RedundantCover(NodeId, NodeId),
    #[error("set is not an antichain: {0} and {1} are comparable")]
    NotAntichain(NodeId, NodeId),
    #[error("set is not a lower order ideal: {0} is missing below {1}")]
    NotIdeal(NodeId, NodeId),
    #[error("sequence is not a linear extension of the poset")]
    NotLinearExtension,
    #[error("interval [{0},{1}] is not valid here")]
    InvalidInterval(usize, usize),
    #[error("singleton interval [{0},{0}] has no proper partition")]
    NoProperPartition(usize),
    #[error("{needed} antichains exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("orbit is inconsistent with the tree: {0}")]
    InconsistentOrbit(String),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("statistic domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid statistic: {0}")]
    InvalidStatistic(String),
    #[error("invalid family descriptor: {0}")]
    InvalidFamily(String),
    #[error("no closed-form predictor for {0}")]
    UnsupportedFamily(String),
    #[error("malformed orbit profile: {0}")]
    MalformedProfile(String),
    #[error("labeling is not in the order polytope: {0}")]
    NotInOrderPolytope(String),
    #[error("zero value or denominator while toggling node {0}")]
    ZeroDenominator(NodeId),
    #[error("zero-denominator restarts exhausted after {0} attempts")]
    RetriesExhausted(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
