//! Derivative-free coordinate search over per-feature thresholds.

mod bounds;
mod config;
mod search;
mod trace;

pub use bounds::{BoundsState, Winner};
pub use config::{compute_rmax, CsConfig, InitialBounds, MaxNfe};
pub use search::{
    optimize_feature_thresholds, optimize_global_threshold, refine_scalar, CsOutcome,
    RefineOutcome, ScalarOutcome,
};
pub use trace::{DecisionRecord, OptimizationTrace, RunRecord};
