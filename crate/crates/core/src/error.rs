use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("bracket of basis elements {i} and {j} leaves the span (residual {residual:.3e})")]
    NotClosed { i: usize, j: usize, residual: f64 },

    #[error("invalid parameters: {0}")]
    Param(String),

    #[error("simple roots are linearly dependent")]
    DegenerateRootSystem,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("attach: bracket of retained vectors {i} and {j} reaches a dropped direction (residual {residual:.3e})")]
    ClosureViolation { i: usize, j: usize, residual: f64 },

    #[error("sign flags break closure at [{i}, {j}] -> {k}")]
    Parity { i: String, j: String, k: String },

    #[error("plane vectors are linearly dependent (gram determinant {0:.3e})")]
    DegeneratePlane(f64),

    #[error("algebra is not of Iwasawa type: {0}")]
    NotIwasawa(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "DimensionError",
            Error::NotClosed { .. } => "NotClosedError",
            Error::Param(_) => "ParamError",
            Error::DegenerateRootSystem => "DegenerateRootSystemError",
            Error::Internal(_) => "InternalError",
            Error::ClosureViolation { .. } => "ClosureViolation",
            Error::Parity { .. } => "ParityError",
            Error::DegeneratePlane(_) => "DegeneratePlaneError",
            Error::NotIwasawa(_) => "NotIwasawaError",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::Parse(_) => "ParseError",
            Error::Json(_) => "ParseError",
        }
    }
}
