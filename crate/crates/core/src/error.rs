use thiserror::Error;

/// Errors raised by the algebra, poset, digraph and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: char, found: char },

    #[error("operand of an ordinal-sum product contains the empty composition")]
    EmptyOperand,

    #[error("unrealizable strictness assignment: the labeling constraints contain a cycle")]
    Unrealizable,

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("digraph has a directed cycle")]
    Cyclic,

    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),

    #[error("{what}: size {n} exceeds guard {max} (use --force or QSYM_GUARD_MAX_N)")]
    GuardExceeded { what: &'static str, n: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("weight mismatch: composition has weight {weight}, poset has {n} elements")]
    WeightMismatch { weight: usize, n: usize },

    #[error("pointed partitions require an all-weak poset")]
    NotAllWeak,

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("invariant evaluation failed on object {key}: {source}")]
    Invariant {
        key: String,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
