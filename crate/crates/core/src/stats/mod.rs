//! Nonparametric significance testing over repeated benchmark runs.

mod kruskal;
mod posthoc;
mod rank;

pub use kruskal::{chi_square_sf, kruskal_wallis, KwResult};
pub use posthoc::{
    kruskal_with_posthoc, posthoc_pairwise, Adjustment, NegLog10Matrix, PairwiseMatrix,
    PosthocMethod, P_FLOOR, SIGNIFICANCE_LEVEL,
};
pub use rank::{mid_ranks, TieStats};

use crate::error::{Error, Result};

/// Named per-method score lists, in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunResults {
    methods: Vec<String>,
    scores: Vec<Vec<f64>>,
}

impl RunResults {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers one method's per-run scores. Scores must be finite and in
    /// `[0, 1]`, with at least two runs.
    pub fn push(&mut self, method: impl Into<String>, scores: Vec<f64>) -> Result<()> {
        let method = method.into();
        if scores.len() < 2 {
            return Err(Error::InvalidStatInput(format!(
                "method '{method}' has {} run(s); at least 2 are required",
                scores.len()
            )));
        }
        if let Some(bad) = scores
            .iter()
            .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0)
        {
            return Err(Error::InvalidStatInput(format!(
                "method '{method}' has a score {bad} outside [0, 1]"
            )));
        }
        if self.methods.contains(&method) {
            return Err(Error::InvalidStatInput(format!(
                "method '{method}' registered twice"
            )));
        }
        self.methods.push(method);
        self.scores.push(scores);
        Ok(())
    }

    pub fn methods(&self) -> &[String] {
        &self.methods
    }

    pub fn groups(&self) -> &[Vec<f64>] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.methods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.methods.is_empty()
    }
}
