use thiserror::Error;

use crate::rootcore::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dynkin type {family:?}{rank}")]
    InvalidType { family: Family, rank: usize },

    #[error("node {node} is not a node of the diagram")]
    UnknownNode { node: usize },

    #[error("expected an irreducible Dynkin type, got {0}")]
    Reducible(String),

    #[error("the grading sigma_{node} of {ty} is not short")]
    NotShort { ty: String, node: usize },

    #[error("weight orbit exceeds the cap of {cap} elements")]
    OrbitCap { cap: usize },

    #[error("module rank {rank} exceeds the peeling cap of {cap}")]
    ModuleCap { rank: usize, cap: usize },

    #[error("character peeling is limited to rank {cap} diagrams, got rank {rank}")]
    RankCap { rank: usize, cap: usize },

    #[error("weight multiset is not invariant under the reflection s_{reflection}")]
    NotInvariant { reflection: usize },

    #[error("weight multiset is not a genuine character: {0}")]
    NotACharacter(String),

    #[error("Jordan variant or size mismatch: {0}")]
    Mismatch(String),

    #[error("element is singular (norm {norm})")]
    Singular { norm: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("point is not fixed by the flow")]
    NotFixed,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
