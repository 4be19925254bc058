//! Threshold vectors and global cut-points.

use crate::binary::BinaryMatrix;
use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One cut-point per feature dimension; the optimizer's output and the
/// binarizer's input.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdVector<S> {
    cutpoints: Vec<S>,
}

impl<S: Scalar> ThresholdVector<S> {
    /// Builds a threshold vector, rejecting non-finite cut-points.
    pub fn new(cutpoints: Vec<S>) -> Result<Self> {
        if cutpoints.is_empty() {
            return Err(Error::Empty("threshold vector"));
        }
        for (i, c) in cutpoints.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite { row: 0, col: i });
            }
        }
        Ok(Self { cutpoints })
    }

    /// Constant vector: the same cut-point for every dimension.
    pub fn constant(n_dims: usize, value: S) -> Result<Self> {
        Self::new(vec![value; n_dims])
    }

    pub fn len(&self) -> usize {
        self.cutpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cutpoints.is_empty()
    }

    #[inline]
    pub fn get(&self, dim: usize) -> S {
        self.cutpoints[dim]
    }

    /// Replaces one cut-point. Panics if out of range; rejects non-finite.
    pub fn set(&mut self, dim: usize, value: S) -> Result<()> {
        assert!(dim < self.cutpoints.len());
        if !value.is_finite() {
            return Err(Error::NonFinite { row: 0, col: dim });
        }
        self.cutpoints[dim] = value;
        Ok(())
    }

    pub fn as_slice(&self) -> &[S] {
        &self.cutpoints
    }
}

/// Which procedure produced a global cut-point. Determines whether the
/// comparison at the boundary is strict: the hybrid rule assigns 1 only to
/// values strictly above the threshold, all other rules are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMethod {
    Simple,
    Otsu,
    Hybrid,
    CsGlobal,
    OptimizedSimple,
    OptimizedOtsu,
    OptimizedHybrid,
}

impl ThresholdMethod {
    /// Strict `>` at the boundary instead of inclusive `>=`.
    pub fn strict(self) -> bool {
        matches!(self, Self::Hybrid | Self::OptimizedHybrid)
    }

    /// Method after one-dimensional refinement.
    pub fn refined(self) -> Self {
        match self {
            Self::Simple | Self::OptimizedSimple => Self::OptimizedSimple,
            Self::Otsu | Self::OptimizedOtsu => Self::OptimizedOtsu,
            Self::Hybrid | Self::OptimizedHybrid => Self::OptimizedHybrid,
            Self::CsGlobal => Self::CsGlobal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Simple => "simple",
            Self::Otsu => "otsu",
            Self::Hybrid => "hybrid",
            Self::CsGlobal => "cs-global",
            Self::OptimizedSimple => "optimized-simple",
            Self::OptimizedOtsu => "optimized-otsu",
            Self::OptimizedHybrid => "optimized-hybrid",
        }
    }
}

impl std::str::FromStr for ThresholdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Self::Simple),
            "otsu" => Ok(Self::Otsu),
            "hybrid" => Ok(Self::Hybrid),
            "cs-global" => Ok(Self::CsGlobal),
            "optimized-simple" => Ok(Self::OptimizedSimple),
            "optimized-otsu" => Ok(Self::OptimizedOtsu),
            "optimized-hybrid" => Ok(Self::OptimizedHybrid),
            other => Err(Error::InvalidConfig(format!(
                "unknown threshold method '{other}'"
            ))),
        }
    }
}

/// A single cut-point applied to every feature, tagged with the method that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalThreshold<S> {
    value: S,
    method: ThresholdMethod,
}

impl<S: Scalar> GlobalThreshold<S> {
    pub fn new(value: S, method: ThresholdMethod) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite { row: 0, col: 0 });
        }
        Ok(Self { value, method })
    }

    pub fn value(&self) -> S {
        self.value
    }

    pub fn method(&self) -> ThresholdMethod {
        self.method
    }

    pub fn strict(&self) -> bool {
        self.method.strict()
    }

    /// Constant threshold vector over `n_dims` dimensions. Note this loses
    /// the strictness tag: the core binarizer always uses inclusive `>=`.
    pub fn expand(&self, n_dims: usize) -> Result<ThresholdVector<S>> {
        ThresholdVector::constant(n_dims, self.value)
    }

    /// Binarizes a matrix honoring this method's boundary rule.
    pub fn binarize(&self, matrix: &EmbeddingMatrix<S>) -> Result<BinaryMatrix> {
        let strict = self.strict();
        let t = self.value;
        BinaryMatrix::from_fn(matrix.n_samples(), matrix.n_dims(), |r, d| {
            let v = matrix.value(r, d);
            if strict {
                v > t
            } else {
                v >= t
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(ThresholdVector::new(vec![0.0, f64::NAN]).is_err());
        assert!(GlobalThreshold::new(f64::INFINITY, ThresholdMethod::Simple).is_err());
        let mut t = ThresholdVector::new(vec![0.0f64]).unwrap();
        assert!(t.set(0, f64::NAN).is_err());
    }

    #[test]
    fn strictness_follows_method() {
        assert!(!ThresholdMethod::Simple.strict());
        assert!(!ThresholdMethod::Otsu.strict());
        assert!(!ThresholdMethod::CsGlobal.strict());
        assert!(ThresholdMethod::Hybrid.strict());
        assert!(ThresholdMethod::OptimizedHybrid.strict());
    }

    #[test]
    fn strict_binarize_differs_only_at_ties() {
        let m = EmbeddingMatrix::from_rows(vec![vec![0.5f64, 0.4, 0.6]]).unwrap();
        let strict = GlobalThreshold::new(0.5, ThresholdMethod::Hybrid).unwrap();
        let inclusive = GlobalThreshold::new(0.5, ThresholdMethod::Simple).unwrap();
        let bs = strict.binarize(&m).unwrap();
        let bi = inclusive.binarize(&m).unwrap();
        assert!(!bs.bit(0, 0) && bi.bit(0, 0)); // tie cell
        assert_eq!(bs.bit(0, 1), bi.bit(0, 1));
        assert_eq!(bs.bit(0, 2), bi.bit(0, 2));
    }

    #[test]
    fn expand_matches_inclusive_binarize() {
        let m = EmbeddingMatrix::from_rows(vec![vec![-0.5f64, 0.7], vec![0.2, -0.1]]).unwrap();
        let g = GlobalThreshold::new(0.1, ThresholdMethod::Otsu).unwrap();
        let direct = g.binarize(&m).unwrap();
        let expanded = crate::binary::binarize(&m, &g.expand(2).unwrap()).unwrap();
        assert_eq!(direct, expanded);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [
            ThresholdMethod::Simple,
            ThresholdMethod::Otsu,
            ThresholdMethod::Hybrid,
            ThresholdMethod::CsGlobal,
            ThresholdMethod::OptimizedSimple,
            ThresholdMethod::OptimizedOtsu,
            ThresholdMethod::OptimizedHybrid,
        ] {
            assert_eq!(m.name().parse::<ThresholdMethod>().unwrap(), m);
        }
    }
}
