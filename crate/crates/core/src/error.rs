use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational function has a pole at t = 1")]
    PoleAtOne,

    #[error("denominator is identically zero")]
    ZeroDenominator,

    #[error("constant term of the series is not a unit")]
    NonUnitConstantTerm,

    #[error("series truncations differ")]
    TruncationMismatch,

    #[error("epsilon-regularized coefficient diverges at index {0:?}")]
    RegularizationFailure(Vec<u32>),

    #[error("vertex index {index} out of range for a quiver with {vertices} vertices")]
    IndexOutOfRange { index: usize, vertices: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("quotient is not a Laurent polynomial")]
    NonPolynomialQuotient,

    #[error("invalid quiver spec: {0}")]
    InvalidSpec(String),

    #[error("vertices {0:?} have level 0; a per-vertex index cap is required")]
    UnboundedTruncation(Vec<usize>),

    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}
