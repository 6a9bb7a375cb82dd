use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = HullError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HullError {
    #[error("input contains no points")]
    EmptyInput,

    #[error("every point coincides with the center")]
    DegenerateDataset,

    #[error("horizon angle leg has zero length")]
    ZeroLengthLeg,

    #[error("hull has no vertices")]
    EmptyHull,

    #[error("fence point list is empty")]
    EmptyFence,

    #[error("bin interval fell below {min:e} rad after {halvings} halvings without convergence")]
    IntervalUnderflow { halvings: usize, min: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HullError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HullError::Io {
            path: path.into(),
            source,
        }
    }
}
