use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis rows are linearly dependent")]
    DegenerateBasis,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sublattice is not stable under the action")]
    NotStable,
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("invalid Dynkin type {0}")]
    InvalidType(String),
    #[error("index {index} out of range (size {len})")]
    IndexError { index: usize, len: usize },
    #[error("group is not semisimple")]
    NotSemisimple,
    #[error("element is not fixed by the Galois action")]
    NotFixed,
    #[error("element violates the root relations")]
    NotCentral,
    #[error("unknown real form label {label:?} for type {dynkin}")]
    UnknownLabel { label: String, dynkin: String },
    #[error("invalid real structure: {0}")]
    InvalidStructure(String),
    #[error("real structure and datum live on different groups")]
    GroupMismatch,
    #[error("<M, alpha_{node}^vee> != 0 for basis row {row}")]
    OrthogonalityViolated { node: usize, row: usize },
    #[error("node {0} lies in I and is not a color")]
    NotAColor(usize),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid Picard rank one triple: {0}")]
    InvalidTriple(String),
    #[error("tits table line {line}: {msg}")]
    TableFormat { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
