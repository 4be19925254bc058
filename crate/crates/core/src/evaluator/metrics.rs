//! Accuracy and macro-F1.

use crate::embedding::LabelVector;
use crate::error::{Error, Result};

/// Classification quality on one evaluation set. `macro_f1` is the
/// unweighted mean of the per-class F1 scores over the full class universe;
/// a class with no predicted and no true samples contributes 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalMetrics {
    pub accuracy: f64,
    pub macro_f1: f64,
    pub per_class_f1: Vec<f64>,
}

/// Computes accuracy and per-class/macro F1 from predictions and truth.
/// Undefined precision or recall (0/0) counts as 0.
pub fn metrics(predicted: &LabelVector, truth: &LabelVector) -> Result<EvalMetrics> {
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            what: "prediction length",
            expected: truth.len(),
            actual: predicted.len(),
        });
    }
    let n_classes = predicted.n_classes().max(truth.n_classes());
    let mut tp = vec![0usize; n_classes];
    let mut fp = vec![0usize; n_classes];
    let mut fn_ = vec![0usize; n_classes];
    let mut correct = 0usize;
    for (&p, &t) in predicted.labels().iter().zip(truth.labels()) {
        if p == t {
            correct += 1;
            tp[p as usize] += 1;
        } else {
            fp[p as usize] += 1;
            fn_[t as usize] += 1;
        }
    }
    let per_class_f1: Vec<f64> = (0..n_classes)
        .map(|c| {
            let precision_den = tp[c] + fp[c];
            let recall_den = tp[c] + fn_[c];
            let precision = if precision_den == 0 {
                0.0
            } else {
                tp[c] as f64 / precision_den as f64
            };
            let recall = if recall_den == 0 {
                0.0
            } else {
                tp[c] as f64 / recall_den as f64
            };
            if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            }
        })
        .collect();
    let macro_f1 = per_class_f1.iter().sum::<f64>() / n_classes as f64;
    Ok(EvalMetrics {
        accuracy: correct as f64 / truth.len() as f64,
        macro_f1,
        per_class_f1,
    })
}
