use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("minor index is malformed: {0}")]
    BadMinorIndex(String),

    #[error("order {r} out of range 0..={max}")]
    RankOutOfRange { r: usize, max: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not invertible modulo {0}")]
    SingularModulo(String),

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),

    #[error("polynomial degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("precision escalation failed after {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },

    #[error("input is not rational: {0}")]
    NonRational(String),

    #[error("invalid dependence: {0}")]
    InvalidDependence(String),

    #[error("not exceptional at r = {0}")]
    NotExceptional(usize),

    #[error("point is not on the curve")]
    OffCurve,

    #[error("curves are defined over different fields")]
    FieldMismatch,

    #[error("invalid field or curve: {0}")]
    InvalidCurve(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("integer factorization gave up on {0}")]
    FactorizationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures caused by caps, budgets or precision limits rather
    /// than by malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::DegreeCapExceeded { .. }
                | Error::PrecisionExhausted { .. }
                | Error::Budget(_)
                | Error::FactorizationFailed(_)
        )
    }
}
