use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain relations do not have full rank; the quotient is infinite")]
    InfiniteQuotient,

    #[error("map is not well defined on the quotient: domain relations are not sent into target relations")]
    IllDefinedMap,

    #[error("ideals belong to different rings")]
    RingMismatch,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{0} is not a squarefree integer different from 0 and 1")]
    NotSquarefree(i64),

    #[error("lattice is not closed under multiplication by the ring generator")]
    NotAnIdeal,

    #[error("the zero ideal is not allowed")]
    ZeroIdeal,

    #[error("the zero vector cannot define a hyperplane")]
    ZeroVector,

    #[error("resource bound exceeded: {what} = {value} > {limit}")]
    ResourceBound { what: &'static str, value: String, limit: String },

    #[error("interpolation produced a non-integer coefficient {0}")]
    NonIntegerCoefficient(String),

    #[error("duplicate interpolation node {0}")]
    DuplicateNodes(String),

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("samples are not consistent with a polynomial of degree <= {0}")]
    InconsistentSamples(usize),

    #[error("{0} is not a divisor of the period")]
    NotADivisor(String),

    #[error("layer is not torsion for the requested ideal")]
    NotTorsion,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn resource(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::ResourceBound { what, value: value.to_string(), limit: limit.to_string() }
    }
}
