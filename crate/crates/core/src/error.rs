//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by matrix construction, thresholding, optimization,
/// training, and statistics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension index {dim} out of range for {n_dims} dimensions")]
    DimOutOfRange { dim: usize, n_dims: usize },

    #[error("row index {row} out of range for {n_samples} samples")]
    RowOutOfRange { row: usize, n_samples: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("class {class} is missing from the label vector")]
    MissingClass { class: u32 },

    #[error("label {label} out of range for {n_classes} classes")]
    LabelOutOfRange { label: u32, n_classes: usize },

    #[error("class {class} has only {count} sample(s); at least 2 are required")]
    ClassTooSmall { class: u32, count: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("interval collapsed on dimension {dim}: lower {lower} >= upper {upper}")]
    CollapsedInterval {
        dim: usize,
        lower: f64,
        upper: f64,
    },

    #[error("fitness evaluation returned a non-finite value: {value}")]
    NonFiniteFitness { value: f64 },

    #[error("fitness evaluation failed: {0}")]
    FitnessFailure(String),

    #[error("training diverged: non-finite loss at epoch {epoch}")]
    TrainingDiverged { epoch: usize },

    #[error("invalid statistic input: {0}")]
    InvalidStatInput(String),
}
