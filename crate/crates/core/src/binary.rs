//! Bit-packed binary matrices and the binarization rule.
//!
//! Storage is column-major: each dimension's `n_samples` bits form one
//! contiguous block of words, so re-thresholding a single dimension (the
//! coordinate-search inner step) rewrites one block and leaves the rest
//! untouched.

use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::threshold::ThresholdVector;

/// Fixed size of the on-disk barcode header: 4-byte magic, 1-byte version,
/// and two little-endian u32 counts. Footprint accounting includes it so
/// reported sizes match what lands on disk.
pub const BARCODE_HEADER_LEN: usize = 4 + 1 + 4 + 4;

const WORD_BITS: usize = 64;

/// Bit-packed `n_samples x n_dims` matrix of {0,1} codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    n_samples: usize,
    n_dims: usize,
    words_per_col: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    /// All-zero matrix of the given shape.
    pub fn zeroed(n_samples: usize, n_dims: usize) -> Result<Self> {
        if n_samples == 0 || n_dims == 0 {
            return Err(Error::Empty("binary matrix must be non-empty"));
        }
        let words_per_col = n_samples.div_ceil(WORD_BITS);
        Ok(Self {
            n_samples,
            n_dims,
            words_per_col,
            words: vec![0; words_per_col * n_dims],
        })
    }

    /// Builds a matrix by evaluating a predicate at every `(row, dim)`.
    pub fn from_fn(
        n_samples: usize,
        n_dims: usize,
        mut bit: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut m = Self::zeroed(n_samples, n_dims)?;
        for d in 0..n_dims {
            for r in 0..n_samples {
                if bit(r, d) {
                    m.set_bit(r, d, true);
                }
            }
        }
        Ok(m)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// Bit at `(row, dim)`. Panics if out of range.
    #[inline]
    pub fn bit(&self, row: usize, dim: usize) -> bool {
        assert!(row < self.n_samples && dim < self.n_dims);
        let word = self.words[dim * self.words_per_col + row / WORD_BITS];
        word >> (row % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_bit(&mut self, row: usize, dim: usize, value: bool) {
        assert!(row < self.n_samples && dim < self.n_dims);
        let word = &mut self.words[dim * self.words_per_col + row / WORD_BITS];
        let mask = 1u64 << (row % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// Number of set bits in one dimension's column.
    pub fn column_ones(&self, dim: usize) -> usize {
        assert!(dim < self.n_dims);
        self.words[dim * self.words_per_col..(dim + 1) * self.words_per_col]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Re-binarizes a single dimension against a new cut-point, leaving all
    /// other columns bit-identical. The result equals a full [`binarize`]
    /// with that dimension's threshold replaced.
    pub fn update_column<S: Scalar>(
        &mut self,
        matrix: &EmbeddingMatrix<S>,
        dim: usize,
        cutpoint: S,
    ) -> Result<()> {
        if dim >= self.n_dims {
            return Err(Error::DimOutOfRange {
                dim,
                n_dims: self.n_dims,
            });
        }
        if matrix.n_samples() != self.n_samples || matrix.n_dims() != self.n_dims {
            return Err(Error::DimensionMismatch {
                what: "matrix paired with binary matrix",
                expected: self.n_samples * self.n_dims,
                actual: matrix.n_samples() * matrix.n_dims(),
            });
        }
        let block = &mut self.words[dim * self.words_per_col..(dim + 1) * self.words_per_col];
        block.fill(0);
        for r in 0..self.n_samples {
            if matrix.value(r, dim) >= cutpoint {
                block[r / WORD_BITS] |= 1u64 << (r % WORD_BITS);
            }
        }
        Ok(())
    }

    /// Packed payload bytes for a given shape: one bit per value, each
    /// column padded to a whole byte.
    pub fn payload_bytes_for(n_samples: usize, n_dims: usize) -> usize {
        n_dims * n_samples.div_ceil(8)
    }

    /// Packed payload bytes of this matrix.
    pub fn payload_bytes(&self) -> usize {
        Self::payload_bytes_for(self.n_samples, self.n_dims)
    }

    /// Payload plus the fixed header, i.e. the full persisted size.
    pub fn footprint_bytes(&self) -> usize {
        self.payload_bytes() + BARCODE_HEADER_LEN
    }
}

/// Thresholds a matrix into binary codes: bit is 1 iff the value is greater
/// than or equal to that dimension's cut-point (the boundary is inclusive).
pub fn binarize<S: Scalar>(
    matrix: &EmbeddingMatrix<S>,
    thresholds: &ThresholdVector<S>,
) -> Result<BinaryMatrix> {
    if thresholds.len() != matrix.n_dims() {
        return Err(Error::DimensionMismatch {
            what: "threshold vector",
            expected: matrix.n_dims(),
            actual: thresholds.len(),
        });
    }
    let mut out = BinaryMatrix::zeroed(matrix.n_samples(), matrix.n_dims())?;
    for d in 0..matrix.n_dims() {
        out.update_column(matrix, d, thresholds.get(d))?;
    }
    Ok(out)
}
