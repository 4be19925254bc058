//! Coordinate-search configuration and the run-budget arithmetic.

use crate::error::{Error, Result};
use crate::optimizer::bounds::BoundsState;
use crate::scalar::Scalar;

/// Total fitness-evaluation budget. `Auto` derives it from the data shape
/// as `n_samples * maxiter * 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxNfe {
    Auto,
    Explicit(u64),
}

/// Initial per-dimension search intervals.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialBounds<S> {
    /// The same `[lo, hi]` for every dimension.
    Uniform(S, S),
    /// One `(lo, hi)` pair per dimension.
    PerDimension(Vec<(S, S)>),
}

impl<S: Scalar> InitialBounds<S> {
    pub fn materialize(&self, n_dims: usize) -> Result<BoundsState<S>> {
        match self {
            InitialBounds::Uniform(lo, hi) => BoundsState::uniform(n_dims, *lo, *hi),
            InitialBounds::PerDimension(pairs) => {
                if pairs.len() != n_dims {
                    return Err(Error::DimensionMismatch {
                        what: "per-dimension bounds",
                        expected: n_dims,
                        actual: pairs.len(),
                    });
                }
                BoundsState::from_pairs(pairs.clone())
            }
        }
    }
}

/// Coordinate-search parameters.
///
/// Ties between the two candidates go to Y; this is fixed, not configurable,
/// so searches reproduce exactly. `reset_bounds_per_run` restarts every run
/// from the initial bounds (restart semantics); switching it off carries the
/// shrunken bounds from run to run.
#[derive(Debug, Clone, PartialEq)]
pub struct CsConfig<S> {
    pub maxiter: usize,
    pub max_nfe: MaxNfe,
    pub initial_bounds: InitialBounds<S>,
    pub reset_bounds_per_run: bool,
    pub seed: u64,
}

impl<S: Scalar> CsConfig<S> {
    pub fn new(maxiter: usize, seed: u64) -> Self {
        Self {
            maxiter,
            max_nfe: MaxNfe::Auto,
            initial_bounds: InitialBounds::Uniform(S::from_f64_lossy(-1.0), S::one()),
            reset_bounds_per_run: true,
            seed,
        }
    }

    pub fn with_max_nfe(mut self, max_nfe: MaxNfe) -> Self {
        self.max_nfe = max_nfe;
        self
    }

    pub fn with_bounds(mut self, bounds: InitialBounds<S>) -> Self {
        self.initial_bounds = bounds;
        self
    }

    pub fn with_reset_bounds(mut self, reset: bool) -> Self {
        self.reset_bounds_per_run = reset;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.maxiter == 0 {
            return Err(Error::InvalidConfig("maxiter must be at least 1".into()));
        }
        if let MaxNfe::Explicit(0) = self.max_nfe {
            return Err(Error::InvalidConfig("max_nfe must be positive".into()));
        }
        Ok(())
    }
}

/// Number of restart runs the evaluation budget affords:
/// `R_max = max(1, floor(max_nfe / (2 * n_dims * maxiter)))`, with the
/// automatic budget `max_nfe = n_samples * maxiter * 2`.
pub fn compute_rmax(n_samples: usize, n_dims: usize, maxiter: usize, max_nfe: MaxNfe) -> usize {
    let budget = match max_nfe {
        MaxNfe::Auto => n_samples as u64 * maxiter as u64 * 2,
        MaxNfe::Explicit(n) => n,
    };
    let per_run = 2 * n_dims as u64 * maxiter as u64;
    (budget / per_run).max(1) as usize
}
