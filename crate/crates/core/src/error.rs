use thiserror::Error;

/// Errors produced by model construction, norm evaluation and the verification suite.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration limit exceeded: {what} needs 2^{bits} cases (limit 2^{limit})")]
    EnumerationLimit {
        what: &'static str,
        bits: usize,
        limit: usize,
    },

    #[error("intractable class: {0}")]
    IntractableClass(String),

    #[error("unsupported norm pair: {0}")]
    UnsupportedNorms(String),

    #[error("unsupported locals: {0}")]
    UnsupportedLocals(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unknown model id `{0}`")]
    UnknownModel(String),

    #[error("bisection failed to bracket {0}")]
    NotBracketed(&'static str),

    #[error("index out of range: {index} >= {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
