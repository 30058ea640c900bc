use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed schema: {0}")]
    Schema(String),

    #[error("duplicate feature name `{0}`")]
    DuplicateFeature(String),

    #[error("unknown feature kind `{kind}` for feature `{feature}` (expected numeric or categorical)")]
    UnknownKind { feature: String, kind: String },

    #[error("feature `{feature}` has range [{min}, {max}] with min > max")]
    InvalidRange { feature: String, min: f64, max: f64 },

    #[error("table header lacks column `{0}`")]
    MissingColumn(String),

    #[error("line {line}: column `{column}` value `{value}` is not a real number")]
    ParseCell {
        line: u64,
        column: String,
        value: String,
    },

    #[error("line {line}: column `{column}` is not finite")]
    NonFiniteCell { line: u64, column: String },

    #[error("row {row}: feature `{feature}` value {value} lies outside its declared range [{min}, {max}]")]
    OutOfRange {
        row: usize,
        feature: String,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("table has no usable rows ({dropped} dropped for missing or non-finite fitness)")]
    NoUsableRows { dropped: usize },

    #[error("need at least 2 configurations, found {0}")]
    TooFewRows(usize),

    #[error("sample size must be at least 2, got {0}")]
    SampleSize(usize),

    #[error("rows {i} and {j} share no non-missing feature; distance undefined")]
    AllWeightsZero { i: usize, j: usize },

    #[error("fitness binning: {0}")]
    Binning(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by an internal consistency check rather than
    /// by the user's input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
