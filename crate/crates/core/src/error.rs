use thiserror::Error;

/// Errors raised by the algebraic and numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero weight has no codimension-one subgroup")]
    ZeroWeight,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("alpha not dominant: {0}")]
    NotDominant(String),
    #[error("not invertible in truncated ring (unit coefficient {0})")]
    NotInvertible(String),
    #[error("weight tables required: {0}")]
    TablesRequired(String),
    #[error("invalid space descriptor: {0}")]
    InvalidSpace(String),
    #[error("level {0} is not in the bifurcation set for this signature")]
    NotInLambda(String),
    #[error("no bifurcation guaranteed at this level: {0}")]
    NoGuarantee(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("quadrature underresolved: need exactness {needed}, have {available}")]
    QuadratureUnderresolved { needed: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a crossing: {0}")]
    NotACrossing(String),
    #[error("apply isotropy restriction: restricted kernel has dimension {0}")]
    KernelNotSimple(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
