//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by arithmetic, construction, and parsing.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("generator table mismatch: {0}")]
    TableMismatch(String),

    #[error("coefficient ring mismatch between operands")]
    RingMismatch,

    #[error("variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },

    #[error("series must have constant term {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("linear coefficient {0} has no inverse in the coefficient ring")]
    NonInvertibleLinear(String),

    #[error("element {0} is not a unit")]
    NotAUnit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),

    #[error("degree bound {bound} exceeded: expression has weight {actual}")]
    DegreeBound { bound: u64, actual: u64 },

    #[error("expression is not weight-homogeneous")]
    NotHomogeneous,

    #[error("distribution has zero mean, so its exponential has no compositional inverse")]
    ZeroMean,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid energetic set: {0}")]
    InvalidEnergeticSet(String),

    #[error("monomial {0} has more CP factors than b factors")]
    UnpairedFactor(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
