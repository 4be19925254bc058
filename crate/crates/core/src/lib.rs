//! Binary "barcode" representations of real-valued embedding matrices.
//!
//! This crate converts dense embedding matrices into bit-packed binary
//! matrices by thresholding each feature dimension. It ships four classical
//! global thresholding baselines (simple, min-max, Otsu, hybrid), a
//! derivative-free coordinate search that finds one optimal cut-point per
//! feature by interval halving, a deterministic softmax-regression fitness
//! pipeline (stratified split, training, macro-F1), and nonparametric
//! statistics (Kruskal-Wallis, pairwise post-hoc matrices) for comparing
//! method scores over repeated runs.
//!
//! Numeric code is generic over the scalar type via [`Scalar`] (`f32` or
//! `f64`); concrete aliases for the common instantiations live at the crate
//! root. Classifier training and statistics always accumulate in `f64`.

pub mod binary;
pub mod embedding;
pub mod error;
pub mod evaluator;
pub mod optimizer;
pub mod scalar;
pub mod seeds;
pub mod stats;
pub mod threshold;
pub mod thresholders;

pub use binary::{binarize, BinaryMatrix, BARCODE_HEADER_LEN};
pub use embedding::{EmbeddingMatrix, LabelVector};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use threshold::{GlobalThreshold, ThresholdMethod, ThresholdVector};

/// Embedding matrices as loaded from 32-bit files.
pub type EmbeddingMatrixF32 = EmbeddingMatrix<f32>;
/// Embedding matrices widened for double-precision work.
pub type EmbeddingMatrixF64 = EmbeddingMatrix<f64>;
/// Threshold vectors paired with [`EmbeddingMatrixF32`].
pub type ThresholdVectorF32 = ThresholdVector<f32>;
/// Threshold vectors paired with [`EmbeddingMatrixF64`].
pub type ThresholdVectorF64 = ThresholdVector<f64>;
/// Global cut-points paired with [`EmbeddingMatrixF32`].
pub type GlobalThresholdF32 = GlobalThreshold<f32>;
/// Global cut-points paired with [`EmbeddingMatrixF64`].
pub type GlobalThresholdF64 = GlobalThreshold<f64>;
