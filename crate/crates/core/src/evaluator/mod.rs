//! Fitness pipeline: stratified splitting, deterministic softmax
//! regression, and macro-F1 scoring.

mod fitness;
mod logistic;
mod metrics;
mod split;

pub use fitness::{evaluate_threshold, train_and_score, EvalFitness};
pub use logistic::{
    loss_gradient_at, train_logistic, ClassifierModel, FeatureSource, TrainConfig, TrainingMeta,
};
pub use metrics::{metrics, EvalMetrics};
pub use split::{stratified_split, SplitIndices};
