//! Dense embedding matrices and class labels.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense `n_samples x n_dims` matrix of real-valued features, row-major.
///
/// All values are finite; non-finite entries are rejected at construction so
/// later threshold comparisons are never poisoned by NaN. Immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix<S> {
    n_samples: usize,
    n_dims: usize,
    values: Vec<S>,
}

impl<S: Scalar> EmbeddingMatrix<S> {
    /// Builds a matrix from row-major values, validating shape and finiteness.
    pub fn new(n_samples: usize, n_dims: usize, values: Vec<S>) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::Empty("embedding matrix has no samples"));
        }
        if n_dims == 0 {
            return Err(Error::Empty("embedding matrix has no dimensions"));
        }
        let expected = n_samples
            .checked_mul(n_dims)
            .ok_or_else(|| Error::InvalidShape("n_samples * n_dims overflows".into()))?;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "embedding values",
                expected,
                actual: values.len(),
            });
        }
        for (idx, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / n_dims,
                    col: idx % n_dims,
                });
            }
        }
        Ok(Self {
            n_samples,
            n_dims,
            values,
        })
    }

    /// Builds a matrix from per-sample rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("embedding matrix has no samples"));
        }
        let n_dims = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_dims {
                return Err(Error::InvalidShape(format!(
                    "row {i} has {} columns, expected {n_dims}",
                    row.len()
                )));
            }
        }
        let n_samples = rows.len();
        let values = rows.into_iter().flatten().collect();
        Self::new(n_samples, n_dims, values)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// Value at `(row, dim)`. Panics if out of range.
    #[inline]
    pub fn value(&self, row: usize, dim: usize) -> S {
        assert!(row < self.n_samples && dim < self.n_dims);
        self.values[row * self.n_dims + dim]
    }

    /// One sample as a contiguous slice.
    #[inline]
    pub fn row(&self, row: usize) -> &[S] {
        assert!(row < self.n_samples);
        &self.values[row * self.n_dims..(row + 1) * self.n_dims]
    }

    /// All values, row-major.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Global (min, max) over every entry.
    pub fn value_range(&self) -> (S, S) {
        let mut min = self.values[0];
        let mut max = self.values[0];
        for &v in &self.values[1..] {
            if v < min {
                min = v;
            }
            if v > max {
                max = v;
            }
        }
        (min, max)
    }

    /// Pooled values of the given rows, flattened row-major.
    pub fn pooled_rows(&self, rows: &[usize]) -> Result<Vec<S>> {
        let mut out = Vec::with_capacity(rows.len() * self.n_dims);
        for &r in rows {
            if r >= self.n_samples {
                return Err(Error::RowOutOfRange {
                    row: r,
                    n_samples: self.n_samples,
                });
            }
            out.extend_from_slice(self.row(r));
        }
        Ok(out)
    }

    /// Bytes occupied by the raw values when stored as 32-bit reals.
    pub fn real_value_bytes(&self) -> usize {
        self.n_samples * self.n_dims * 4
    }
}

/// Per-sample class identifiers in `0..n_classes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<u32>,
    n_classes: usize,
}

impl LabelVector {
    /// Builds a dataset label vector, inferring `n_classes` from the maximum
    /// label and requiring every class in `0..n_classes` to occur at least
    /// once, with at least two classes overall.
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("label vector"));
        }
        let n_classes = labels.iter().max().copied().unwrap_or(0) as usize + 1;
        if n_classes < 2 {
            return Err(Error::InvalidShape(
                "label vector must contain at least 2 classes".into(),
            ));
        }
        let mut seen = vec![false; n_classes];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MissingClass {
                class: missing as u32,
            });
        }
        Ok(Self { labels, n_classes })
    }

    /// Builds a label vector with an explicit class universe, checking only
    /// that labels are in range. Used for predictions and row subsets, where
    /// some classes may legitimately be absent.
    pub fn with_classes(labels: Vec<u32>, n_classes: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("label vector"));
        }
        if n_classes == 0 {
            return Err(Error::InvalidShape("n_classes must be positive".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= n_classes) {
            return Err(Error::LabelOutOfRange {
                label: bad,
                n_classes,
            });
        }
        Ok(Self { labels, n_classes })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, row: usize) -> u32 {
        self.labels[row]
    }

    /// Occurrences of each class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts
    }

    /// Labels of a row subset, keeping the full class universe.
    pub fn select(&self, rows: &[usize]) -> Result<LabelVector> {
        let mut picked = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >= self.labels.len() {
                return Err(Error::RowOutOfRange {
                    row: r,
                    n_samples: self.labels.len(),
                });
            }
            picked.push(self.labels[r]);
        }
        LabelVector::with_classes(picked, self.n_classes)
    }
}
