use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} lies on the principal branch cut")]
    BranchCut(Complex64),
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("point {0} lies outside the closed unit disk")]
    OutsideDisk(Complex64),
    #[error("finite-difference step {0} underflows at this point")]
    StepUnderflow(f64),
    #[error("zero base raised to a non-positive exponent")]
    ZeroBase,
    #[error("limit at {at} does not exist: ray estimates spread by {spread:e}")]
    NonRemovable { at: Complex64, spread: f64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("domain {0} is not convex")]
    NonConvex(String),
    #[error("boundary parameter {0} is a declared corner")]
    CornerParameter(f64),
    #[error("derivative {value:e} too small at boundary parameter {theta}")]
    VanishingDerivative { theta: f64, value: f64 },
    #[error("bound inapplicable: denominator {0} is not positive")]
    BoundInapplicable(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed expression: {0}")]
    Expression(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
