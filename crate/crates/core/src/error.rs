use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution creates a pole: denominator vanishes identically")]
    PoleAtSubstitution,
    #[error("pole at {0} = 0")]
    PoleAtZero(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not sign-alternating")]
    NotAlternating(String),
    #[error("row {0} does not sum to 1")]
    BadRowSum(usize),
    #[error("column {0} does not sum to 1")]
    BadColSum(usize),
    #[error("not a corner sum matrix: {0}")]
    NotACornerSum(String),
    #[error("size {0} exceeds the enumeration bound {1}")]
    SizeTooLarge(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matching and weighting have different orders")]
    OrderMismatch,
    #[error("alternating sign matrices are not compatible")]
    Incompatible,
    #[error("the (generalized) lambda-determinant does not exist for this input")]
    UndefinedDeterminant,
    #[error("zero face weight in a local rewrite")]
    ZeroFaceWeight,
    #[error("pole while generating the sequence at index {0}")]
    PoleInSequence(usize),
    #[error("pole in the elliptic flow at step {0}")]
    PoleInFlow(usize),
    #[error("(lambda, t) does not satisfy the periodicity condition for p = {0}")]
    NotOnPeriodicityLocus(usize),
    #[error("singular curve: invariant denominator vanishes")]
    SingularCurve,
    #[error("expression is not Laurent in {0}")]
    NotLaurent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
