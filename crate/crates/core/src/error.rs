use thiserror::Error;

use crate::dag::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc set contains a directed cycle")]
    Cycle,
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(NodeId, NodeId),
    #[error("self arc on node {0}")]
    SelfArc(NodeId),
    #[error("node index {index} out of range for {n} nodes")]
    InvalidNode { index: NodeId, n: usize },
    #[error("arc {0} -> {1} is not in the graph")]
    MissingArc(NodeId, NodeId),
    #[error("arc {0} -> {1} is not covered")]
    NotCovered(NodeId, NodeId),
    #[error("node sets do not match: {0}")]
    NodeSetMismatch(String),
    #[error("invalid separation query: {0}")]
    InvalidQuery(String),
    #[error("{what} supports at most {limit} nodes, got {n}")]
    SizeLimit { what: &'static str, limit: usize, n: usize },
    #[error("instance has no parameter bound")]
    MissingBound,
    #[error("target graph is not an independence map of the source graph")]
    NotAnIMap,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("not a permutation of the node set: {0}")]
    NotAPermutation(String),
    #[error("invalid node name `{0}`")]
    InvalidName(String),
    #[error("node {node} has cardinality {value}; at least 2 states are required")]
    InvalidCardinality { node: NodeId, value: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
