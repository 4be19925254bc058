//! Per-dimension search bounds and the interval-halving step.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which candidate won a comparison. `X` is the lower-half representative,
/// `Y` the upper-half one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    X,
    Y,
}

impl Winner {
    pub fn name(self) -> &'static str {
        match self {
            Winner::X => "X",
            Winner::Y => "Y",
        }
    }
}

/// Lower and upper bounds per dimension. Widths only ever shrink: each
/// decision halves the active dimension's interval, so after `k` decisions
/// from `[-1, 1]` the width is exactly `2^(1-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsState<S> {
    lower: Vec<S>,
    upper: Vec<S>,
}

impl<S: Scalar> BoundsState<S> {
    /// Uniform bounds `[lo, hi]` for every dimension.
    pub fn uniform(n_dims: usize, lo: S, hi: S) -> Result<Self> {
        Self::from_pairs(vec![(lo, hi); n_dims])
    }

    /// Per-dimension bounds.
    pub fn from_pairs(pairs: Vec<(S, S)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Empty("bounds"));
        }
        for (i, &(lo, hi)) in pairs.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::NonFinite { row: 0, col: i });
            }
            if lo >= hi {
                return Err(Error::CollapsedInterval {
                    dim: i,
                    lower: lo.as_f64(),
                    upper: hi.as_f64(),
                });
            }
        }
        let (lower, upper) = pairs.into_iter().unzip();
        Ok(Self { lower, upper })
    }

    pub fn n_dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, dim: usize) -> S {
        self.lower[dim]
    }

    pub fn upper(&self, dim: usize) -> S {
        self.upper[dim]
    }

    pub fn interval(&self, dim: usize) -> (S, S) {
        (self.lower[dim], self.upper[dim])
    }

    pub fn width(&self, dim: usize) -> S {
        self.upper[dim] - self.lower[dim]
    }

    pub fn center(&self, dim: usize) -> S {
        let half = S::from_f64_lossy(0.5);
        half * (self.lower[dim] + self.upper[dim])
    }

    /// The two candidate cut-points for a dimension: the centers of the
    /// lower and upper halves of the current interval,
    /// `x = L + (U-L)/4` and `y = U - (U-L)/4`, always `x < y`.
    pub fn candidates(&self, dim: usize) -> Result<(S, S)> {
        if dim >= self.n_dims() {
            return Err(Error::DimOutOfRange {
                dim,
                n_dims: self.n_dims(),
            });
        }
        let (lo, hi) = self.interval(dim);
        if lo >= hi {
            return Err(Error::CollapsedInterval {
                dim,
                lower: lo.as_f64(),
                upper: hi.as_f64(),
            });
        }
        let quarter = S::from_f64_lossy(0.25) * (hi - lo);
        Ok((lo + quarter, hi - quarter))
    }

    /// Halves the dimension's interval, keeping the winner's side: an X win
    /// moves the upper bound to the midpoint, a Y win moves the lower bound.
    pub fn shrink(&mut self, dim: usize, winner: Winner) -> Result<()> {
        if dim >= self.n_dims() {
            return Err(Error::DimOutOfRange {
                dim,
                n_dims: self.n_dims(),
            });
        }
        let mid = self.center(dim);
        match winner {
            Winner::X => self.upper[dim] = mid,
            Winner::Y => self.lower[dim] = mid,
        }
        Ok(())
    }
}
