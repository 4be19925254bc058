//! Stratified train/validation splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embedding::LabelVector;
use crate::error::{Error, Result};

/// Disjoint, exhaustive train/validation row-index sets. Both sorted
/// ascending so identical inputs always serialize identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    train_rows: Vec<usize>,
    validation_rows: Vec<usize>,
}

impl SplitIndices {
    pub fn train_rows(&self) -> &[usize] {
        &self.train_rows
    }

    pub fn validation_rows(&self) -> &[usize] {
        &self.validation_rows
    }
}

/// Splits rows into train and validation sets, per class proportional to
/// `validation_fraction` within one sample, deterministic for a fixed seed.
/// Every class keeps at least one sample on each side, so classes with a
/// single sample are rejected.
pub fn stratified_split(
    labels: &LabelVector,
    validation_fraction: f64,
    seed: u64,
) -> Result<SplitIndices> {
    if !(validation_fraction > 0.0 && validation_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "validation fraction must be in (0, 1), got {validation_fraction}"
        )));
    }
    for (class, &count) in labels.class_counts().iter().enumerate() {
        if count < 2 {
            return Err(Error::ClassTooSmall {
                class: class as u32,
                count,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_rows = Vec::new();
    let mut validation_rows = Vec::new();
    for class in 0..labels.n_classes() as u32 {
        let mut rows: Vec<usize> = labels
            .labels()
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| (l == class).then_some(i))
            .collect();
        rows.shuffle(&mut rng);
        let n = rows.len();
        let want = (validation_fraction * n as f64).round() as usize;
        let n_val = want.clamp(1, n - 1);
        validation_rows.extend_from_slice(&rows[..n_val]);
        train_rows.extend_from_slice(&rows[n_val..]);
    }
    train_rows.sort_unstable();
    validation_rows.sort_unstable();
    Ok(SplitIndices {
        train_rows,
        validation_rows,
    })
}
