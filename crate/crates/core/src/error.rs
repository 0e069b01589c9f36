use thiserror::Error;

use crate::weyl::Bounds;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial does not split over the rationals: remainder of degree {degree}")]
    IrreducibleRemainder { degree: usize },

    #[error("linear system is inconsistent")]
    NoSolution,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("no b-function found within bounds {0}")]
    BoundsExhausted(Bounds),

    #[error("-1 is not a root of the b-function")]
    MissingRootMinusOne,

    #[error("shift m = {0} must be zero for this bound")]
    NonzeroShift(u32),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial does not vanish at the origin")]
    NonvanishingAtOrigin,

    #[error("Newton boundary is degenerate")]
    DegenerateInput,

    #[error("polynomial is not reduced (has a repeated factor)")]
    NonReduced,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("witness verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
