use thiserror::Error;

use crate::instance::Side;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line 1: missing header")]
    MissingHeader,
    #[error("line 1: malformed header {0:?}, expected a positive integer")]
    BadHeader(String),
    #[error("instance must have at least one man and one woman")]
    Empty,
    #[error("{men} men but {women} women")]
    SideMismatch { men: usize, women: usize },
    #[error("expected {expected} lines, found {found}")]
    LineCount { expected: usize, found: usize },
    #[error("line {line}: malformed entry {token:?}")]
    BadToken { line: usize, token: String },
    #[error("{}list of {side} {person} is not a permutation: {reason}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    InvalidList {
        side: Side,
        person: usize,
        line: Option<usize>,
        reason: String,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("matching covers {found} people, instance has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matching is not perfect: man {0} is unmatched")]
    NotPerfect(usize),
    #[error("index out of range in pair ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("man {0} appears in more than one pair")]
    DuplicateMan(usize),
    #[error("woman {0} appears in more than one pair")]
    DuplicateWoman(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    /// A proposer ran out of entries; unreachable from a valid run of the
    /// disjoint-matchings loop on a complete instance.
    #[error("{side} {person} exhausted their reduced preference list")]
    Exhausted { side: Side, person: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance of size {n} is too large for exhaustive enumeration (limit {limit})")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("{count} matchings exceed the subset-search limit of {limit}")]
    TooManyMatchings { count: usize, limit: usize },
    #[error("input matching {0} is not stable")]
    Unstable(usize),
    #[error("at least one matching is required")]
    NoMatchings,
    #[error("level {0} of the partner sort is not a perfect matching")]
    NotAMatching(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("the 3x3 fixture has n = 3, got {0}")]
    FixedSize(usize),
}
