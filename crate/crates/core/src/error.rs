use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by curve construction, parsing and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("support size mismatch: {0} vs {1}")]
    SupportMismatch(usize, usize),

    #[error("empty support")]
    EmptySupport,

    #[error("non-finite weight at atom {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("negative weight at atom {index}: {value}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weights sum to {sum}, outside 1 ± {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("invalid gaussian mixture: {0}")]
    InvalidGmm(String),

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("invalid lambda grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid Lorenz curve: {0}")]
    InvalidCurve(String),

    #[error("mu is not absolutely continuous w.r.t. both P and Q (atom {index})")]
    NotAbsolutelyContinuous { index: usize },

    #[error("support size {n} too large for enumeration (max {max})")]
    SupportTooLarge { n: usize, max: usize },

    #[error("error mask has length {mask}, support has {support}")]
    MaskLength { mask: usize, support: usize },

    #[error("error atom index {index} out of range for support of size {support}")]
    MaskIndex { index: usize, support: usize },

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error("oracle violation in {quantity}: {detail}")]
    OracleViolation { quantity: String, detail: String },

    #[error("bound violation: {0}")]
    BoundViolation(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a mathematical property or oracle check, as
    /// opposed to malformed input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::OracleViolation { .. } | Error::BoundViolation(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
