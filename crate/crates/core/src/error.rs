use thiserror::Error;

/// Which standing hypothesis on the graded algebra failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    NonNegativelyGraded,
    SelfInjective,
    FiniteGlobalDimension,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Hypothesis::NonNegativelyGraded => "non-negatively graded",
            Hypothesis::SelfInjective => "self-injective",
            Hypothesis::FiniteGlobalDimension => "degree-0 part of finite global dimension",
        })
    }
}

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidField(u32),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("relation {0} is not homogeneous")]
    NonHomogeneousRelation(usize),
    #[error("invalid quiver presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unknown algebra family {0:?}")]
    UnknownFamily(String),
    #[error("trace-form radical needs characteristic 0 or p > {dim}; got {characteristic}")]
    UnsupportedCharacteristic { characteristic: u32, dim: usize },
    #[error("semisimple quotient does not split over the base field")]
    NonSplitSemisimpleQuotient,
    #[error("algebra carries no complete set of primitive idempotents")]
    MissingIdempotents,
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("algebra is not non-negatively graded")]
    NotNonNegativelyGraded,
    #[error("algebra is not self-injective")]
    NotSelfInjective,
    #[error("modules or maps over different algebras")]
    AlgebraMismatch,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
