//! The threshold fitness: binarize, train on the training rows, score on
//! the validation rows.

use crate::binary::{binarize, BinaryMatrix};
use crate::embedding::{EmbeddingMatrix, LabelVector};
use crate::error::{Error, Result};
use crate::evaluator::logistic::{train_logistic, FeatureSource, TrainConfig};
use crate::evaluator::metrics::{metrics, EvalMetrics};
use crate::evaluator::split::SplitIndices;
use crate::scalar::Scalar;

/// Trains on the split's training rows and scores on its validation rows.
pub fn train_and_score(
    features: &dyn FeatureSource,
    labels: &LabelVector,
    split: &SplitIndices,
    config: &TrainConfig,
) -> Result<EvalMetrics> {
    let model = train_logistic(features, labels, split.train_rows(), config)?;
    let predicted = LabelVector::with_classes(
        model.predict_rows(features, split.validation_rows())?,
        labels.n_classes(),
    )?;
    let truth = labels.select(split.validation_rows())?;
    metrics(&predicted, &truth)
}

/// Full threshold evaluation: binarize the matrix, train on the training
/// rows, report validation metrics. A pure function of its arguments; the
/// fitness value consumed by the optimizer is `macro_f1`.
pub fn evaluate_threshold<S: Scalar>(
    matrix: &EmbeddingMatrix<S>,
    labels: &LabelVector,
    thresholds: &crate::threshold::ThresholdVector<S>,
    split: &SplitIndices,
    config: &TrainConfig,
) -> Result<EvalMetrics> {
    if labels.len() != matrix.n_samples() {
        return Err(Error::DimensionMismatch {
            what: "labels paired with matrix",
            expected: matrix.n_samples(),
            actual: labels.len(),
        });
    }
    let binary = binarize(matrix, thresholds)?;
    train_and_score(&binary, labels, split, config)
}

/// Caching wrapper around [`evaluate_threshold`] for the optimizer's inner
/// loop. Consecutive evaluations differ in at most one coordinate, so the
/// cached binary matrix is patched column-by-column instead of rebuilt; a
/// repeated vector returns the memoized score without retraining. Results
/// are identical to the uncached path.
pub struct EvalFitness<'a, S> {
    matrix: &'a EmbeddingMatrix<S>,
    labels: &'a LabelVector,
    split: &'a SplitIndices,
    config: TrainConfig,
    cache: Option<(Vec<S>, BinaryMatrix)>,
    last: Option<(Vec<S>, EvalMetrics)>,
}

impl<'a, S: Scalar> EvalFitness<'a, S> {
    pub fn new(
        matrix: &'a EmbeddingMatrix<S>,
        labels: &'a LabelVector,
        split: &'a SplitIndices,
        config: TrainConfig,
    ) -> Self {
        Self {
            matrix,
            labels,
            split,
            config,
            cache: None,
            last: None,
        }
    }

    /// Macro-F1 of the thresholds on the validation rows.
    pub fn fitness(&mut self, thresholds: &crate::threshold::ThresholdVector<S>) -> Result<f64> {
        Ok(self.evaluate(thresholds)?.macro_f1)
    }

    /// Full metrics, using the column cache where possible.
    pub fn evaluate(
        &mut self,
        thresholds: &crate::threshold::ThresholdVector<S>,
    ) -> Result<EvalMetrics> {
        if thresholds.len() != self.matrix.n_dims() {
            return Err(Error::DimensionMismatch {
                what: "threshold vector",
                expected: self.matrix.n_dims(),
                actual: thresholds.len(),
            });
        }
        if let Some((last_t, last_metrics)) = &self.last {
            if last_t == thresholds.as_slice() {
                return Ok(last_metrics.clone());
            }
        }

        match &mut self.cache {
            Some((cached_t, binary)) => {
                let changed: Vec<usize> = (0..thresholds.len())
                    .filter(|&d| cached_t[d] != thresholds.get(d))
                    .collect();
                if changed.len() <= thresholds.len() / 2 {
                    for &d in &changed {
                        binary.update_column(self.matrix, d, thresholds.get(d))?;
                        cached_t[d] = thresholds.get(d);
                    }
                } else {
                    *binary = binarize(self.matrix, thresholds)?;
                    cached_t.clear();
                    cached_t.extend_from_slice(thresholds.as_slice());
                }
            }
            None => {
                let binary = binarize(self.matrix, thresholds)?;
                self.cache = Some((thresholds.as_slice().to_vec(), binary));
            }
        }

        let binary = &self.cache.as_ref().expect("cache populated above").1;
        let result = train_and_score(binary, self.labels, self.split, &self.config)?;
        self.last = Some((thresholds.as_slice().to_vec(), result.clone()));
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::split::stratified_split;
    use crate::threshold::ThresholdVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Two classes separated on feature 0 at 0.0; feature 1 is noise.
    fn separable_dataset() -> (EmbeddingMatrix<f64>, LabelVector) {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..80 {
            let class = i % 2;
            let center = if class == 0 { -0.5 } else { 0.5 };
            rows.push(vec![
                center + rng.random_range(-0.2..0.2),
                rng.random_range(-1.0..1.0),
            ]);
            labels.push(class as u32);
        }
        (
            EmbeddingMatrix::from_rows(rows).unwrap(),
            LabelVector::new(labels).unwrap(),
        )
    }

    #[test]
    fn separating_threshold_reaches_perfect_macro_f1() {
        let (m, labels) = separable_dataset();
        let split = stratified_split(&labels, 0.25, 3).unwrap();
        let t = ThresholdVector::new(vec![0.0, 2.0]).unwrap();
        let result = evaluate_threshold(&m, &labels, &t, &split, &TrainConfig::default()).unwrap();
        assert_eq!(result.macro_f1, 1.0);
        assert_eq!(result.accuracy, 1.0);
    }

    #[test]
    fn threshold_above_all_data_behaves_like_majority_class() {
        let (m, labels) = separable_dataset();
        let split = stratified_split(&labels, 0.25, 3).unwrap();
        let t = ThresholdVector::new(vec![2.0, 2.0]).unwrap();
        let result = evaluate_threshold(&m, &labels, &t, &split, &TrainConfig::default()).unwrap();
        assert!(result.macro_f1 <= 0.5, "macro F1 {}", result.macro_f1);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let (m, labels) = separable_dataset();
        let split = stratified_split(&labels, 0.25, 3).unwrap();
        let t = ThresholdVector::new(vec![0.1, -0.4]).unwrap();
        let a = evaluate_threshold(&m, &labels, &t, &split, &TrainConfig::default()).unwrap();
        let b = evaluate_threshold(&m, &labels, &t, &split, &TrainConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cached_fitness_equals_fresh_evaluation() {
        let (m, labels) = separable_dataset();
        let split = stratified_split(&labels, 0.25, 9).unwrap();
        let config = TrainConfig::default();
        let mut cached = EvalFitness::new(&m, &labels, &split, config.clone());

        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut t = ThresholdVector::new(vec![0.0, 0.0]).unwrap();
        for _ in 0..12 {
            let dim = rng.random_range(0..2);
            t.set(dim, rng.random_range(-1.0..1.0)).unwrap();
            let fast = cached.fitness(&t).unwrap();
            let slow = evaluate_threshold(&m, &labels, &t, &split, &config)
                .unwrap()
                .macro_f1;
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn repeated_vector_hits_the_memo() {
        let (m, labels) = separable_dataset();
        let split = stratified_split(&labels, 0.25, 9).unwrap();
        let mut cached = EvalFitness::new(&m, &labels, &split, TrainConfig::default());
        let t = ThresholdVector::new(vec![0.3, -0.3]).unwrap();
        let first = cached.fitness(&t).unwrap();
        let second = cached.fitness(&t).unwrap();
        assert_eq!(first, second);
    }
}
