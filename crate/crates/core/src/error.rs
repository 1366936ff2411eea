use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("multiplication table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("multiplication table is not associative: ({0})({1})({2})")]
    NotAssociative(String, String, String),
    #[error("generalized dicyclic parameter y must be an involution of A")]
    DicyclicNotInvolution,
    #[error("H_n requires n >= 2 (got {0})")]
    HnTooSmall(u32),
    #[error("group of order {0} cannot be enumerated (limit {1})")]
    NotEnumerable(String, usize),
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: usize },
    #[error("word parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("element does not belong to this group")]
    ForeignElement,
    #[error("the identity cannot belong to a generating set")]
    IdentityInGenSet,
    #[error("the given set does not generate the group")]
    NotGenerating,
    #[error("{0} is not contained in {1}")]
    NotSubset(&'static str, &'static str),
    #[error("element {0} is not in the symmetric set")]
    NotInSet(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
