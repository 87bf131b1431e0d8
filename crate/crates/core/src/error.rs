use thiserror::Error;

/// Errors raised by construction, analysis and I/O routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {n} outside supported range 1..={max}")]
    VarCount { n: usize, max: usize },

    #[error("assignment {x} out of range for {n} variables")]
    AssignmentOutOfRange { x: u64, n: usize },

    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("invalid variable index {index} for a {n}-variable function")]
    InvalidVariable { index: usize, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("no nonzero annihilator exists: {0}")]
    NoAnnihilator(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
