use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("division by zero in rational literal")]
    DivisionByZero,
    #[error("expression is not homogeneous (degrees {0} and {1})")]
    Inhomogeneous(i64, i64),
    #[error("zero expression has no degree")]
    ZeroExpression,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("degree bound {0} too small: basis in that degree is still nonempty")]
    DegreeBoundTooSmall(usize),
    #[error("degree {0} lies outside the computed range of the algebra")]
    DegreeOutOfRange(i64),
    #[error("twist inference failed for column {col}: {msg}")]
    TwistInference { col: usize, msg: String },
    #[error("map is not graded: entry ({row}, {col}) has the wrong degree")]
    NotGraded { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("homology at index {0} needs both neighbouring differentials inside the window")]
    WindowBoundary(i64),
    #[error("window too short: {0}")]
    WindowTooShort(String),
    #[error("TR condition is undefined for i = 0")]
    TrIndexZero,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("division of power series or Laurent polynomials failed: {0}")]
    Series(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
