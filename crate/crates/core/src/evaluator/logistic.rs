//! Deterministic multinomial logistic regression.
//!
//! Full-batch gradient descent from zero initialization with a backtracking
//! step size, so the fit is a pure function of its inputs: no RNG, no
//! minibatching, loss non-increasing by construction. Training always
//! accumulates in `f64` regardless of the feature scalar type.

use crate::binary::BinaryMatrix;
use crate::embedding::{EmbeddingMatrix, LabelVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Anything that can serve rows of real-valued features to the classifier.
/// Binary matrices expose their bits as {0,1} reals, without re-centering.
pub trait FeatureSource: Sync {
    fn n_samples(&self) -> usize;
    fn n_dims(&self) -> usize;
    /// Writes row `row` into `out` (length `n_dims`).
    fn write_row(&self, row: usize, out: &mut [f64]);
}

impl<S: Scalar> FeatureSource for EmbeddingMatrix<S> {
    fn n_samples(&self) -> usize {
        EmbeddingMatrix::n_samples(self)
    }

    fn n_dims(&self) -> usize {
        EmbeddingMatrix::n_dims(self)
    }

    fn write_row(&self, row: usize, out: &mut [f64]) {
        for (o, v) in out.iter_mut().zip(self.row(row)) {
            *o = v.as_f64();
        }
    }
}

impl FeatureSource for BinaryMatrix {
    fn n_samples(&self) -> usize {
        BinaryMatrix::n_samples(self)
    }

    fn n_dims(&self) -> usize {
        BinaryMatrix::n_dims(self)
    }

    fn write_row(&self, row: usize, out: &mut [f64]) {
        for (d, o) in out.iter_mut().enumerate() {
            *o = if self.bit(row, d) { 1.0 } else { 0.0 };
        }
    }
}

/// Softmax-regression training parameters. The defaults give a convex,
/// deterministic fit; weights start at zero, so no seed is involved.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub l2_penalty: f64,
    pub max_epochs: usize,
    /// Stop when the gradient's Euclidean norm falls below this.
    pub tolerance: f64,
    /// Starting step size for the backtracking schedule.
    pub initial_step: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            l2_penalty: 1e-4,
            max_epochs: 200,
            tolerance: 1e-6,
            initial_step: 1.0,
        }
    }
}

/// How training ended.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingMeta {
    pub epochs_run: usize,
    pub final_loss: f64,
    pub converged: bool,
}

/// Fitted multinomial model: `n_classes x (n_dims + 1)` weights, the last
/// column holding the bias. Prediction is the argmax over class scores with
/// ties broken toward the lowest class index.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierModel {
    weights: Vec<f64>,
    n_classes: usize,
    n_dims: usize,
    meta: TrainingMeta,
}

impl ClassifierModel {
    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// Flat weights, row per class, bias last in each row.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn meta(&self) -> &TrainingMeta {
        &self.meta
    }

    fn scores(&self, features: &[f64], out: &mut [f64]) {
        let stride = self.n_dims + 1;
        for (c, score) in out.iter_mut().enumerate() {
            let row = &self.weights[c * stride..(c + 1) * stride];
            let mut z = row[self.n_dims]; // bias
            for (w, x) in row[..self.n_dims].iter().zip(features) {
                z += w * x;
            }
            *score = z;
        }
    }

    /// Predicted classes for selected rows of a feature source.
    pub fn predict_rows(&self, features: &dyn FeatureSource, rows: &[usize]) -> Result<Vec<u32>> {
        if features.n_dims() != self.n_dims {
            return Err(Error::DimensionMismatch {
                what: "feature width for prediction",
                expected: self.n_dims,
                actual: features.n_dims(),
            });
        }
        let mut x = vec![0.0; self.n_dims];
        let mut z = vec![0.0; self.n_classes];
        let mut out = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >= features.n_samples() {
                return Err(Error::RowOutOfRange {
                    row: r,
                    n_samples: features.n_samples(),
                });
            }
            features.write_row(r, &mut x);
            self.scores(&x, &mut z);
            let mut best = 0usize;
            for (c, &s) in z.iter().enumerate().skip(1) {
                if s > z[best] {
                    best = c;
                }
            }
            out.push(best as u32);
        }
        Ok(out)
    }

    /// Predicted classes for every row.
    pub fn predict(&self, features: &dyn FeatureSource) -> Result<LabelVector> {
        let rows: Vec<usize> = (0..features.n_samples()).collect();
        LabelVector::with_classes(self.predict_rows(features, &rows)?, self.n_classes)
    }
}

/// Design matrix for the selected rows, with a trailing 1.0 bias column.
fn gather(features: &dyn FeatureSource, rows: &[usize]) -> Result<Vec<f64>> {
    let d = features.n_dims();
    let stride = d + 1;
    let mut x = vec![0.0; rows.len() * stride];
    for (i, &r) in rows.iter().enumerate() {
        if r >= features.n_samples() {
            return Err(Error::RowOutOfRange {
                row: r,
                n_samples: features.n_samples(),
            });
        }
        features.write_row(r, &mut x[i * stride..i * stride + d]);
        x[i * stride + d] = 1.0;
    }
    Ok(x)
}

/// Mean cross-entropy plus the L2 term (bias excluded from the penalty).
/// `probs`, when given, receives the softmax rows for gradient reuse.
fn loss_and_probs(
    x: &[f64],
    labels: &[u32],
    weights: &[f64],
    n_classes: usize,
    stride: usize,
    l2: f64,
    mut probs: Option<&mut [f64]>,
) -> f64 {
    let n = labels.len();
    let mut nll = 0.0;
    let mut z = vec![0.0; n_classes];
    for (i, &label) in labels.iter().enumerate() {
        let xi = &x[i * stride..(i + 1) * stride];
        for (c, zc) in z.iter_mut().enumerate() {
            let row = &weights[c * stride..(c + 1) * stride];
            let mut acc = 0.0;
            for (w, v) in row.iter().zip(xi) {
                acc += w * v;
            }
            *zc = acc;
        }
        let zmax = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut denom = 0.0;
        for zc in z.iter_mut() {
            *zc = (*zc - zmax).exp();
            denom += *zc;
        }
        nll -= (z[label as usize] / denom).ln();
        if let Some(p) = probs.as_deref_mut() {
            for (c, &zc) in z.iter().enumerate() {
                p[i * n_classes + c] = zc / denom;
            }
        }
    }
    let mut penalty = 0.0;
    for c in 0..n_classes {
        for w in &weights[c * stride..c * stride + stride - 1] {
            penalty += w * w;
        }
    }
    nll / n as f64 + 0.5 * l2 * penalty
}

/// Gradient of the loss at `weights`, using softmax rows from `probs`.
fn gradient(
    x: &[f64],
    labels: &[u32],
    probs: &[f64],
    weights: &[f64],
    n_classes: usize,
    stride: usize,
    l2: f64,
    grad: &mut [f64],
) {
    grad.fill(0.0);
    let n = labels.len();
    for (i, &label) in labels.iter().enumerate() {
        let xi = &x[i * stride..(i + 1) * stride];
        for c in 0..n_classes {
            let mut delta = probs[i * n_classes + c];
            if c as u32 == label {
                delta -= 1.0;
            }
            let g = &mut grad[c * stride..(c + 1) * stride];
            for (gj, &xj) in g.iter_mut().zip(xi) {
                *gj += delta * xj;
            }
        }
    }
    let inv_n = 1.0 / n as f64;
    for c in 0..n_classes {
        let row = c * stride;
        for j in 0..stride {
            grad[row + j] *= inv_n;
            if j < stride - 1 {
                grad[row + j] += l2 * weights[row + j];
            }
        }
    }
}

/// Trains a softmax-regression model on the given rows by deterministic
/// full-batch descent from zero weights. The `converged` flag is set iff the
/// gradient norm dropped below the tolerance before the epoch limit.
pub fn train_logistic(
    features: &dyn FeatureSource,
    labels: &LabelVector,
    rows: &[usize],
    config: &TrainConfig,
) -> Result<ClassifierModel> {
    if rows.is_empty() {
        return Err(Error::Empty("training rows"));
    }
    if labels.len() != features.n_samples() {
        return Err(Error::DimensionMismatch {
            what: "labels paired with features",
            expected: features.n_samples(),
            actual: labels.len(),
        });
    }
    if config.l2_penalty < 0.0 {
        return Err(Error::InvalidConfig("l2 penalty must be >= 0".into()));
    }
    let n_classes = labels.n_classes();
    let d = features.n_dims();
    let stride = d + 1;
    let x = gather(features, rows)?;
    let y: Vec<u32> = rows.iter().map(|&r| labels.label(r)).collect();

    let mut weights = vec![0.0; n_classes * stride];
    let mut probs = vec![0.0; rows.len() * n_classes];
    let mut grad = vec![0.0; n_classes * stride];
    let mut trial = vec![0.0; n_classes * stride];

    let mut loss = loss_and_probs(
        &x,
        &y,
        &weights,
        n_classes,
        stride,
        config.l2_penalty,
        Some(&mut probs),
    );
    let mut step = config.initial_step;
    let mut epochs_run = 0;
    let mut converged = false;

    for epoch in 0..config.max_epochs {
        if !loss.is_finite() {
            return Err(Error::TrainingDiverged { epoch });
        }
        gradient(
            &x,
            &y,
            &probs,
            &weights,
            n_classes,
            stride,
            config.l2_penalty,
            &mut grad,
        );
        let grad_sq: f64 = grad.iter().map(|g| g * g).sum();
        if grad_sq.sqrt() < config.tolerance {
            converged = true;
            break;
        }
        // Backtracking: halve the step until the Armijo condition holds.
        let mut accepted = false;
        while step > 1e-15 {
            for ((t, w), g) in trial.iter_mut().zip(&weights).zip(&grad) {
                *t = w - step * g;
            }
            let trial_loss = loss_and_probs(
                &x,
                &y,
                &trial,
                n_classes,
                stride,
                config.l2_penalty,
                Some(&mut probs),
            );
            if trial_loss.is_finite() && trial_loss <= loss - 1e-4 * step * grad_sq {
                weights.copy_from_slice(&trial);
                loss = trial_loss;
                step = (step * 2.0).min(64.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        epochs_run = epoch + 1;
        if !accepted {
            // The step size underflowed: no descent direction is left at
            // this precision.
            converged = grad_sq.sqrt() < config.tolerance;
            break;
        }
    }

    Ok(ClassifierModel {
        weights,
        n_classes,
        n_dims: d,
        meta: TrainingMeta {
            epochs_run,
            final_loss: loss,
            converged,
        },
    })
}

/// Analytic gradient at an arbitrary weight vector, exposed for
/// finite-difference verification.
pub fn loss_gradient_at(
    features: &dyn FeatureSource,
    labels: &LabelVector,
    rows: &[usize],
    weights: &[f64],
    l2_penalty: f64,
) -> Result<(f64, Vec<f64>)> {
    let n_classes = labels.n_classes();
    let stride = features.n_dims() + 1;
    if weights.len() != n_classes * stride {
        return Err(Error::DimensionMismatch {
            what: "weight vector",
            expected: n_classes * stride,
            actual: weights.len(),
        });
    }
    let x = gather(features, rows)?;
    let y: Vec<u32> = rows.iter().map(|&r| labels.label(r)).collect();
    let mut probs = vec![0.0; rows.len() * n_classes];
    let loss = loss_and_probs(
        &x,
        &y,
        weights,
        n_classes,
        stride,
        l2_penalty,
        Some(&mut probs),
    );
    let mut grad = vec![0.0; weights.len()];
    gradient(
        &x, &y, &probs, weights, n_classes, stride, l2_penalty, &mut grad,
    );
    Ok((loss, grad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn separable_1d() -> (EmbeddingMatrix<f64>, LabelVector) {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..20 {
            rows.push(vec![0.0]);
            labels.push(0);
            rows.push(vec![1.0]);
            labels.push(1);
        }
        (
            EmbeddingMatrix::from_rows(rows).unwrap(),
            LabelVector::new(labels).unwrap(),
        )
    }

    #[test]
    fn separable_data_is_fit_perfectly() {
        let (m, labels) = separable_1d();
        let rows: Vec<usize> = (0..m.n_samples()).collect();
        let model = train_logistic(&m, &labels, &rows, &TrainConfig::default()).unwrap();
        let pred = model.predict_rows(&m, &rows).unwrap();
        assert_eq!(pred, labels.labels());
    }

    #[test]
    fn zero_init_loss_is_ln2_on_balanced_binary_data() {
        let (m, labels) = separable_1d();
        let rows: Vec<usize> = (0..m.n_samples()).collect();
        let weights = vec![0.0; 2 * 2];
        let (loss, _) = loss_gradient_at(&m, &labels, &rows, &weights, 1e-4).unwrap();
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rows_data: Vec<Vec<f64>> = (0..30)
            .map(|_| (0..5).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let labels =
            LabelVector::new((0..30).map(|i| (i % 3) as u32).collect::<Vec<_>>()).unwrap();
        let m = EmbeddingMatrix::from_rows(rows_data).unwrap();
        let rows: Vec<usize> = (0..30).collect();
        let n_weights = 3 * 6;
        let h = 1e-5;

        for _ in 0..5 {
            let weights: Vec<f64> = (0..n_weights).map(|_| rng.random_range(-1.0..1.0)).collect();
            let (_, grad) = loss_gradient_at(&m, &labels, &rows, &weights, 1e-3).unwrap();
            let mut max_rel = 0.0f64;
            for j in 0..n_weights {
                let mut plus = weights.clone();
                plus[j] += h;
                let mut minus = weights.clone();
                minus[j] -= h;
                let (lp, _) = loss_gradient_at(&m, &labels, &rows, &plus, 1e-3).unwrap();
                let (lm, _) = loss_gradient_at(&m, &labels, &rows, &minus, 1e-3).unwrap();
                let fd = (lp - lm) / (2.0 * h);
                let rel = (grad[j] - fd).abs() / grad[j].abs().max(fd.abs()).max(1e-8);
                max_rel = max_rel.max(rel);
            }
            assert!(max_rel < 1e-4, "max relative error {max_rel}");
        }
    }

    #[test]
    fn loss_is_non_increasing_over_epochs() {
        // Re-train with increasing epoch caps; the final loss must not rise.
        let (m, labels) = separable_1d();
        let rows: Vec<usize> = (0..m.n_samples()).collect();
        let mut last = f64::INFINITY;
        for max_epochs in [1, 2, 5, 10, 50] {
            let cfg = TrainConfig {
                max_epochs,
                ..TrainConfig::default()
            };
            let model = train_logistic(&m, &labels, &rows, &cfg).unwrap();
            assert!(model.meta().final_loss <= last + 1e-15);
            last = model.meta().final_loss;
        }
    }

    #[test]
    fn all_zero_weights_predict_class_zero() {
        let (m, labels) = separable_1d();
        let rows: Vec<usize> = (0..m.n_samples()).collect();
        let cfg = TrainConfig {
            max_epochs: 0,
            ..TrainConfig::default()
        };
        let model = train_logistic(&m, &labels, &rows, &cfg).unwrap();
        let pred = model.predict(&m).unwrap();
        assert!(pred.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn packed_and_unpacked_features_predict_identically() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bits: Vec<Vec<bool>> = (0..40)
            .map(|_| (0..6).map(|_| rng.random::<bool>()).collect())
            .collect();
        let labels =
            LabelVector::new((0..40).map(|i| (i % 2) as u32).collect::<Vec<_>>()).unwrap();
        let packed = BinaryMatrix::from_fn(40, 6, |r, d| bits[r][d]).unwrap();
        let unpacked = EmbeddingMatrix::from_rows(
            bits.iter()
                .map(|row| row.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
        .unwrap();
        let rows: Vec<usize> = (0..40).collect();
        let cfg = TrainConfig::default();
        let mp = train_logistic(&packed, &labels, &rows, &cfg).unwrap();
        let mu = train_logistic(&unpacked, &labels, &rows, &cfg).unwrap();
        assert_eq!(mp.weights(), mu.weights());
        assert_eq!(
            mp.predict(&packed).unwrap().labels(),
            mu.predict(&unpacked).unwrap().labels()
        );
    }

    #[test]
    fn width_mismatch_rejected() {
        let (m, labels) = separable_1d();
        let rows: Vec<usize> = (0..m.n_samples()).collect();
        let model = train_logistic(&m, &labels, &rows, &TrainConfig::default()).unwrap();
        let wide = EmbeddingMatrix::from_rows(vec![vec![0.0f64, 1.0]]).unwrap();
        assert!(model.predict(&wide).is_err());
    }
}
