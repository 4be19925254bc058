//! Classical binarization baselines: simple, min-max, Otsu, and hybrid.
//!
//! Simple and Otsu assign 1 at or above the cut-point; min-max and hybrid
//! assign 1 only strictly above their reference value. Each rule keeps its
//! own boundary convention.

use crate::binary::BinaryMatrix;
use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::threshold::{GlobalThreshold, ThresholdMethod};

/// Default bin count for Otsu's histogram, mirroring its gray-level origin.
pub const DEFAULT_OTSU_BINS: usize = 256;

/// Fixed global cut-point; every value at or above `t` becomes 1.
pub fn simple_threshold<S: Scalar>(t: S) -> Result<GlobalThreshold<S>> {
    GlobalThreshold::new(t, ThresholdMethod::Simple)
}

/// The conventional default cut-point of zero.
pub fn default_simple_threshold<S: Scalar>() -> GlobalThreshold<S> {
    GlobalThreshold::new(S::zero(), ThresholdMethod::Simple).expect("zero is finite")
}

/// Min-max rule: within each sample, a feature becomes 1 iff it strictly
/// exceeds its preceding feature. The first feature has no predecessor and
/// defaults to 0. Stateless per sample; nothing is fitted.
pub fn minmax_binarize<S: Scalar>(matrix: &EmbeddingMatrix<S>) -> Result<BinaryMatrix> {
    BinaryMatrix::from_fn(matrix.n_samples(), matrix.n_dims(), |r, d| {
        d > 0 && matrix.value(r, d) > matrix.value(r, d - 1)
    })
}

/// Equal-width histogram over `[min, max]` of the fitted values.
#[derive(Debug, Clone)]
pub struct Histogram {
    bin_count: usize,
    edges: Vec<f64>,
    counts: Vec<u64>,
}

impl Histogram {
    /// Fits a histogram with `bin_count` equal-width bins. Bins are
    /// half-open `[e_i, e_{i+1})` except the last, which includes `max`.
    pub fn fit(values: &[f64], bin_count: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("histogram input"));
        }
        if bin_count < 2 {
            return Err(Error::InvalidConfig(
                "histogram needs at least 2 bins".into(),
            ));
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::NonFinite { row: 0, col: 0 });
        }
        if min >= max {
            return Err(Error::InvalidStatInput(
                "histogram range is degenerate (all values identical)".into(),
            ));
        }
        let edges: Vec<f64> = (0..=bin_count)
            .map(|i| min + (max - min) * i as f64 / bin_count as f64)
            .collect();
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStatInput(
                "histogram range too narrow for the requested bin count".into(),
            ));
        }
        let mut counts = vec![0u64; bin_count];
        for &v in values {
            let idx = ((v - min) / (max - min) * bin_count as f64) as usize;
            counts[idx.min(bin_count - 1)] += 1;
        }
        Ok(Self {
            bin_count,
            edges,
            counts,
        })
    }

    pub fn bin_count(&self) -> usize {
        self.bin_count
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Otsu cut-point plus the degenerate-distribution flag.
#[derive(Debug, Clone)]
pub struct OtsuResult<S> {
    pub threshold: GlobalThreshold<S>,
    /// All fitted values were identical; the returned cut-point is that
    /// value and carries no separating power.
    pub degenerate: bool,
}

/// Otsu's method over a flat value pool: picks the histogram bin edge that
/// maximizes between-class variance (equivalently, minimizes intra-class
/// variance, since the total is fixed). Ties go to the lowest edge.
pub fn otsu_from_values<S: Scalar>(values: &[S], bin_count: usize) -> Result<OtsuResult<S>> {
    if values.is_empty() {
        return Err(Error::Empty("otsu input"));
    }
    if bin_count < 2 {
        return Err(Error::InvalidConfig("otsu needs at least 2 bins".into()));
    }
    let pool: Vec<f64> = values.iter().map(|v| v.as_f64()).collect();
    let hist = match Histogram::fit(&pool, bin_count) {
        Ok(h) => h,
        Err(Error::InvalidStatInput(_)) => {
            // Zero-variance input: no split exists; report the value itself.
            let t = GlobalThreshold::new(values[0], ThresholdMethod::Otsu)?;
            return Ok(OtsuResult {
                threshold: t,
                degenerate: true,
            });
        }
        Err(e) => return Err(e),
    };
    let mut best_t = 0usize;
    let mut best_var = f64::NEG_INFINITY;
    // Cumulative lower-class moments; the upper class is the complement.
    let total_n: f64 = hist.counts.iter().map(|&c| c as f64).sum();
    let total_m: f64 = hist
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();
    let mut n0 = 0.0;
    let mut m0 = 0.0;
    for t in 0..hist.bin_count - 1 {
        n0 += hist.counts[t] as f64;
        m0 += t as f64 * hist.counts[t] as f64;
        let n1 = total_n - n0;
        let var = if n0 == 0.0 || n1 == 0.0 {
            0.0
        } else {
            let diff = m0 / n0 - (total_m - m0) / n1;
            n0 * n1 * diff * diff
        };
        if var > best_var {
            best_var = var;
            best_t = t;
        }
    }
    let cut = hist.edges[best_t + 1];
    Ok(OtsuResult {
        threshold: GlobalThreshold::new(S::from_f64_lossy(cut), ThresholdMethod::Otsu)?,
        degenerate: false,
    })
}

/// Otsu's method over all entries of a matrix, flattened into one pool.
pub fn otsu_threshold<S: Scalar>(
    matrix: &EmbeddingMatrix<S>,
    bin_count: usize,
) -> Result<OtsuResult<S>> {
    otsu_from_values(matrix.values(), bin_count)
}

/// Hybrid cut-point over a flat value pool: the average of mean and median.
/// Binarization with the result uses strict `>`.
pub fn hybrid_from_values<S: Scalar>(values: &[S]) -> Result<GlobalThreshold<S>> {
    if values.is_empty() {
        return Err(Error::Empty("hybrid input"));
    }
    let mut pool: Vec<f64> = values.iter().map(|v| v.as_f64()).collect();
    let mean = pool.iter().sum::<f64>() / pool.len() as f64;
    pool.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = pool.len();
    let median = if n % 2 == 1 {
        pool[n / 2]
    } else {
        (pool[n / 2 - 1] + pool[n / 2]) / 2.0
    };
    GlobalThreshold::new(
        S::from_f64_lossy((mean + median) / 2.0),
        ThresholdMethod::Hybrid,
    )
}

/// Hybrid cut-point over all entries of a matrix.
pub fn hybrid_threshold<S: Scalar>(matrix: &EmbeddingMatrix<S>) -> Result<GlobalThreshold<S>> {
    hybrid_from_values(matrix.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bits_of_row(b: &BinaryMatrix, row: usize) -> Vec<u8> {
        (0..b.n_dims()).map(|d| b.bit(row, d) as u8).collect()
    }

    #[test]
    fn simple_is_inclusive_and_defaults_to_zero() {
        let m = EmbeddingMatrix::from_rows(vec![vec![-0.5f64, 0.7, 0.0]]).unwrap();
        let t = default_simple_threshold::<f64>();
        assert_eq!(t.value(), 0.0);
        let b = t.binarize(&m).unwrap();
        assert_eq!(bits_of_row(&b, 0), vec![0, 1, 1]);
    }

    #[test]
    fn simple_above_range_yields_all_zeros() {
        let m = EmbeddingMatrix::from_rows(vec![vec![-1.0f64, 0.3, 1.0]]).unwrap();
        let b = simple_threshold(1.5).unwrap().binarize(&m).unwrap();
        assert_eq!(bits_of_row(&b, 0), vec![0, 0, 0]);
    }

    #[test]
    fn minmax_compares_consecutive_features() {
        let m = EmbeddingMatrix::from_rows(vec![vec![0.1f64, 0.5, 0.2]]).unwrap();
        let b = minmax_binarize(&m).unwrap();
        assert_eq!(bits_of_row(&b, 0), vec![0, 1, 0]);
    }

    #[test]
    fn minmax_ties_take_the_zero_branch() {
        let m = EmbeddingMatrix::from_rows(vec![vec![3.0f64, 3.0, 3.0]]).unwrap();
        let b = minmax_binarize(&m).unwrap();
        assert_eq!(bits_of_row(&b, 0), vec![0, 0, 0]);
    }

    #[test]
    fn minmax_strictly_increasing_row() {
        let row: Vec<f64> = (0..12).map(|i| i as f64 * 0.1).collect();
        let m = EmbeddingMatrix::from_rows(vec![row]).unwrap();
        let b = minmax_binarize(&m).unwrap();
        let mut expected = vec![1u8; 12];
        expected[0] = 0;
        assert_eq!(bits_of_row(&b, 0), expected);
    }

    #[test]
    fn minmax_rows_are_independent() {
        let rows = vec![vec![0.1f64, 0.5, 0.2], vec![0.9, 0.1, 0.2]];
        let combined = minmax_binarize(&EmbeddingMatrix::from_rows(rows.clone()).unwrap()).unwrap();
        for (r, row) in rows.iter().enumerate() {
            let single =
                minmax_binarize(&EmbeddingMatrix::from_rows(vec![row.clone()]).unwrap()).unwrap();
            assert_eq!(bits_of_row(&combined, r), bits_of_row(&single, 0));
        }
    }

    /// Scratch recomputation of the between-class variance scan, used as the
    /// oracle for the incremental implementation.
    fn otsu_oracle(values: &[f64], bin_count: usize) -> f64 {
        let hist = Histogram::fit(values, bin_count).unwrap();
        let mut best_t = 0usize;
        let mut best_var = f64::NEG_INFINITY;
        for t in 0..bin_count - 1 {
            let var = between_class_variance(hist.counts(), t);
            if var > best_var {
                best_var = var;
                best_t = t;
            }
        }
        hist.edges()[best_t + 1]
    }

    #[test]
    fn otsu_separates_two_clusters() {
        let values = vec![1.0f64, 1.0, 1.0, 9.0, 9.0, 9.0];
        let m = EmbeddingMatrix::from_rows(vec![values.clone()]).unwrap();
        let r = otsu_threshold(&m, 8).unwrap();
        assert!(!r.degenerate);
        let t = r.threshold.value();
        assert!(t > 1.0 && t < 9.0, "cut {t} not between clusters");
        assert_eq!(t, otsu_oracle(&values, 8));
    }

    #[test]
    fn otsu_matches_oracle_on_gaussian_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut values: Vec<f64> = Vec::new();
        for _ in 0..300 {
            values.push(-0.6 + 0.05 * rng.random::<f64>());
        }
        for _ in 0..300 {
            values.push(0.55 + 0.05 * rng.random::<f64>());
        }
        let m = EmbeddingMatrix::from_rows(vec![values.clone()]).unwrap();
        let r = otsu_threshold(&m, 256).unwrap();
        let t = r.threshold.value();
        assert!(t > -0.55 && t < 0.55, "cut {t} not between cluster means");
        assert_eq!(t, otsu_oracle(&values, 256));
    }

    #[test]
    fn otsu_degenerate_input() {
        let m = EmbeddingMatrix::from_rows(vec![vec![5.0f64, 5.0, 5.0, 5.0]]).unwrap();
        let r = otsu_threshold(&m, 256).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.threshold.value(), 5.0);
    }

    #[test]
    fn otsu_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let values: Vec<f64> = (0..500).map(|_| rng.random_range(-1.0..1.0)).collect();
        let base = otsu_from_values(&values, 64).unwrap().threshold.value();
        let mut shuffled = values.clone();
        shuffled.reverse();
        shuffled.rotate_left(97);
        let permuted = otsu_from_values(&shuffled, 64).unwrap().threshold.value();
        assert_eq!(base, permuted);
    }

    #[test]
    fn hybrid_averages_mean_and_median() {
        let m = EmbeddingMatrix::from_rows(vec![vec![1.0f64, 2.0, 3.0, 4.0, 10.0]]).unwrap();
        let t = hybrid_threshold(&m).unwrap();
        assert_eq!(t.value(), 3.5);
        // Strict comparison: 4 and 10 exceed 3.5.
        let b = t.binarize(&m).unwrap();
        assert_eq!(bits_of_row(&b, 0), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn hybrid_symmetric_values_give_zero() {
        let m = EmbeddingMatrix::from_rows(vec![vec![-0.7f64, 0.0, 0.7]]).unwrap();
        assert_eq!(hybrid_threshold(&m).unwrap().value(), 0.0);
    }

    #[test]
    fn hybrid_matches_independent_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let rows: Vec<Vec<f64>> = (0..100)
            .map(|_| (0..8).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let m = EmbeddingMatrix::from_rows(rows.clone()).unwrap();
        let t = hybrid_threshold(&m).unwrap().value();

        let mut flat: Vec<f64> = rows.into_iter().flatten().collect();
        let mean = flat.iter().sum::<f64>() / flat.len() as f64;
        flat.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = (flat[flat.len() / 2 - 1] + flat[flat.len() / 2]) / 2.0;
        assert!((t - (mean + median) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hybrid_even_pool_median_averages_middle_pair() {
        let m = EmbeddingMatrix::from_rows(vec![vec![1.0f64, 2.0, 4.0, 5.0]]).unwrap();
        // mean 3, median (2+4)/2 = 3 -> T = 3
        assert_eq!(hybrid_threshold(&m).unwrap().value(), 3.0);
    }
}
