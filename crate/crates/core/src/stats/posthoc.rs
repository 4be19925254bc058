//! Pairwise post-hoc p-value matrices and the -log10 heatmap transform.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::stats::kruskal::kruskal_wallis;
use crate::stats::rank::mid_ranks;

/// Significance level used for the heatmap contour flags.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// p-values below this are clamped before the log transform.
pub const P_FLOOR: f64 = 1e-300;

/// Which pairwise test backs the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosthocMethod {
    /// Two-sample rank-sum test per pair, normal approximation with tie and
    /// continuity corrections.
    RankSum,
    /// Dunn's test: z-scores from the ranks of the full pooled sample.
    Dunn,
}

impl std::str::FromStr for PosthocMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ranksum" | "rank-sum" => Ok(Self::RankSum),
            "dunn" => Ok(Self::Dunn),
            other => Err(Error::InvalidConfig(format!(
                "unknown post-hoc method '{other}'"
            ))),
        }
    }
}

/// Optional multiplicity adjustment. The default is no correction; Holm's
/// step-down procedure is available behind a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Adjustment {
    #[default]
    None,
    Holm,
}

/// Symmetric matrix of two-sided p-values with a unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    values: Vec<Vec<f64>>,
}

impl PairwiseMatrix {
    fn from_upper_triangle(k: usize, mut upper: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = vec![vec![1.0; k]; k];
        for a in 0..k {
            for b in (a + 1)..k {
                let p = upper(a, b).clamp(0.0, 1.0).max(f64::MIN_POSITIVE);
                values[a][b] = p;
                values[b][a] = p;
            }
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a][b]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Element-wise -log10 with the floor clamp, plus per-cell significance
    /// flags at p <= 0.05 (the 1.30 contour).
    pub fn neglog10(&self) -> NegLog10Matrix {
        let k = self.len();
        let mut values = vec![vec![0.0; k]; k];
        let mut significant = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                let p = self.values[a][b];
                values[a][b] = -p.max(P_FLOOR).log10();
                significant[a][b] = p <= SIGNIFICANCE_LEVEL;
            }
        }
        NegLog10Matrix {
            values,
            significant,
        }
    }
}

/// Heatmap data: -log10(p) per cell and the significance contour flags.
#[derive(Debug, Clone, PartialEq)]
pub struct NegLog10Matrix {
    pub values: Vec<Vec<f64>>,
    pub significant: Vec<Vec<bool>>,
}

fn validate_pair(groups: &[Vec<f64>]) -> Result<()> {
    if groups.len() < 2 {
        return Err(Error::InvalidStatInput(
            "at least 2 groups are required".into(),
        ));
    }
    for (i, g) in groups.iter().enumerate() {
        if g.len() < 2 {
            return Err(Error::InvalidStatInput(format!(
                "group {i} has {} observation(s); at least 2 are required",
                g.len()
            )));
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidStatInput(format!(
                "group {i} contains a non-finite value"
            )));
        }
    }
    Ok(())
}

/// Two-sided normal tail probability for |z|.
fn two_sided_p(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// Two-sample rank-sum p-value (normal approximation, tie-corrected
/// variance, continuity correction). Zero variance (all values tied) gives
/// p = 1.
fn rank_sum_p(a: &[f64], b: &[f64]) -> f64 {
    let n1 = a.len() as f64;
    let n2 = b.len() as f64;
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = mid_ranks(&pooled);
    let r1: f64 = ranks[..a.len()].iter().sum();
    let u = r1 - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;
    let variance = n1 * n2 / 12.0 * ((n + 1.0) - ties.sum_t3_minus_t / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let diff = u - mean;
    // Continuity correction pulls |U - mean| in by half a unit.
    let corrected = (diff.abs() - 0.5).max(0.0);
    two_sided_p(corrected / variance.sqrt())
}

/// Dunn z-test p-values for every pair, from one ranking of the pooled
/// sample across all groups.
fn dunn_p_matrix(groups: &[Vec<f64>]) -> PairwiseMatrix {
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let (ranks, ties) = mid_ranks(&pooled);
    let mut mean_ranks = Vec::with_capacity(groups.len());
    let mut offset = 0;
    for g in groups {
        let sum: f64 = ranks[offset..offset + g.len()].iter().sum();
        mean_ranks.push(sum / g.len() as f64);
        offset += g.len();
    }
    let base_var = n * (n + 1.0) / 12.0 - ties.sum_t3_minus_t / (12.0 * (n - 1.0));
    PairwiseMatrix::from_upper_triangle(groups.len(), |i, j| {
        let ni = groups[i].len() as f64;
        let nj = groups[j].len() as f64;
        let se_sq = base_var * (1.0 / ni + 1.0 / nj);
        if se_sq <= 0.0 {
            return 1.0;
        }
        two_sided_p((mean_ranks[i] - mean_ranks[j]) / se_sq.sqrt())
    })
}

/// Holm step-down adjustment over the upper triangle, mirrored back.
fn holm_adjust(matrix: &mut PairwiseMatrix) {
    let k = matrix.len();
    let mut cells: Vec<(usize, usize, f64)> = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            cells.push((a, b, matrix.values[a][b]));
        }
    }
    let m = cells.len();
    cells.sort_by(|x, y| x.2.partial_cmp(&y.2).expect("finite p-values"));
    let mut running_max = 0.0f64;
    for (rank, &(a, b, p)) in cells.iter().enumerate() {
        let adjusted = ((m - rank) as f64 * p).min(1.0);
        running_max = running_max.max(adjusted);
        matrix.values[a][b] = running_max;
        matrix.values[b][a] = running_max;
    }
}

/// Pairwise two-sided p-values for every pair of groups. No multiplicity
/// correction unless Holm is requested.
pub fn posthoc_pairwise(
    groups: &[Vec<f64>],
    method: PosthocMethod,
    adjustment: Adjustment,
) -> Result<PairwiseMatrix> {
    validate_pair(groups)?;
    let mut matrix = match method {
        PosthocMethod::RankSum => PairwiseMatrix::from_upper_triangle(groups.len(), |a, b| {
            rank_sum_p(&groups[a], &groups[b])
        }),
        PosthocMethod::Dunn => dunn_p_matrix(groups),
    };
    if adjustment == Adjustment::Holm {
        holm_adjust(&mut matrix);
    }
    Ok(matrix)
}

/// Omnibus test plus post-hoc matrix in one call.
pub fn kruskal_with_posthoc(
    groups: &[Vec<f64>],
    method: PosthocMethod,
    adjustment: Adjustment,
) -> Result<(crate::stats::kruskal::KwResult, PairwiseMatrix)> {
    let kw = kruskal_wallis(groups)?;
    let matrix = posthoc_pairwise(groups, method, adjustment)?;
    Ok((kw, matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn range_group(start: i32, len: i32) -> Vec<f64> {
        (start..start + len).map(f64::from).collect()
    }

    #[test]
    fn diagonal_is_one_and_matrix_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let groups: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..10).map(|_| rng.random::<f64>()).collect())
            .collect();
        for method in [PosthocMethod::RankSum, PosthocMethod::Dunn] {
            let m = posthoc_pairwise(&groups, method, Adjustment::None).unwrap();
            for a in 0..4 {
                assert_eq!(m.get(a, a), 1.0);
                for b in 0..4 {
                    assert_eq!(m.get(a, b), m.get(b, a));
                    assert!(m.get(a, b) > 0.0 && m.get(a, b) <= 1.0);
                }
            }
        }
    }

    #[test]
    fn complete_separation_is_highly_significant() {
        // U = 0 with n = 15 per side.
        let groups = vec![range_group(1, 15), range_group(101, 15)];
        let m = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::None).unwrap();
        assert!(m.get(0, 1) < 1e-5, "p = {}", m.get(0, 1));
    }

    #[test]
    fn identical_groups_are_insignificant() {
        let groups = vec![vec![0.4, 0.6, 0.5], vec![0.5, 0.4, 0.6]];
        for method in [PosthocMethod::RankSum, PosthocMethod::Dunn] {
            let m = posthoc_pairwise(&groups, method, Adjustment::None).unwrap();
            assert!(m.get(0, 1) > 0.5);
        }
    }

    #[test]
    fn all_tied_pair_gives_p_one() {
        let groups = vec![vec![5.0, 5.0, 5.0], vec![5.0, 5.0, 5.0]];
        let m = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::None).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
    }

    #[test]
    fn holm_never_decreases_p_values() {
        let groups = vec![range_group(1, 8), range_group(4, 8), range_group(40, 8)];
        let raw = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::None).unwrap();
        let adjusted = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::Holm).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(adjusted.get(a, b) >= raw.get(a, b));
                assert!(adjusted.get(a, b) <= 1.0);
            }
        }
    }

    #[test]
    fn neglog10_mapping() {
        let groups = vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]];
        let m = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::None).unwrap();
        let h = m.neglog10();
        assert_eq!(h.values[0][0], 0.0); // p = 1 on the diagonal
        assert!(!h.significant[0][0]);

        // Spot values of the pure transform.
        assert!((-(0.05f64.log10()) - 1.3010299956639813).abs() < 1e-12);
        let tiny = PairwiseMatrix {
            values: vec![vec![1.0, 1e-20], vec![1e-20, 1.0]],
        };
        let ht = tiny.neglog10();
        assert_eq!(ht.values[0][1], 20.0);
        assert!(ht.significant[0][1]);
    }

    #[test]
    fn significance_flag_flips_exactly_at_the_threshold() {
        let m = PairwiseMatrix {
            values: vec![vec![1.0, 0.05], vec![0.05, 1.0]],
        };
        let h = m.neglog10();
        assert!(h.significant[0][1]);
        assert!((h.values[0][1] - 1.3010299956639813).abs() < 1e-3);

        let m = PairwiseMatrix {
            values: vec![vec![1.0, 0.051], vec![0.051, 1.0]],
        };
        assert!(!m.neglog10().significant[0][1]);
    }

    #[test]
    fn floor_clamps_the_transform() {
        let m = PairwiseMatrix {
            values: vec![vec![1.0, f64::MIN_POSITIVE], vec![f64::MIN_POSITIVE, 1.0]],
        };
        let h = m.neglog10();
        assert!(h.values[0][1] <= 300.0);
    }

    #[test]
    fn dunn_and_ranksum_agree_on_strong_separation() {
        let groups = vec![range_group(1, 12), range_group(100, 12)];
        let a = posthoc_pairwise(&groups, PosthocMethod::RankSum, Adjustment::None).unwrap();
        let b = posthoc_pairwise(&groups, PosthocMethod::Dunn, Adjustment::None).unwrap();
        assert!(a.get(0, 1) < 1e-4);
        assert!(b.get(0, 1) < 1e-4);
    }
}
