use thiserror::Error;

use crate::algebra::Var;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("unknown variable {0:?}")]
    UnknownVariableName(String),
    #[error("variable {0} is not part of the polynomial's variable set")]
    UnknownVariable(Var),
    #[error("substitution has no image for variable {0}")]
    MissingImage(Var),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("boundary decay violated: |f| = {magnitude:.3e} at the grid edge exceeds {tolerance:.1e}")]
    BoundaryDecay { magnitude: f64, tolerance: f64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("symbol is not positive: value {value} at ({x}, {xi})")]
    NotPositive { x: f64, xi: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
