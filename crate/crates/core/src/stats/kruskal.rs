//! Kruskal-Wallis omnibus test.

use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};
use crate::stats::rank::mid_ranks;

/// Upper tail of the chi-square distribution with `df` degrees of freedom,
/// via the regularized upper incomplete gamma function.
pub fn chi_square_sf(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_ur(df as f64 / 2.0, x / 2.0).clamp(0.0, 1.0)
}

/// Kruskal-Wallis result. `degenerate` marks an all-identical pool, where
/// the tie correction vanishes and H is reported as 0 with p = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct KwResult {
    pub h_statistic: f64,
    pub p_value: f64,
    pub degrees_of_freedom: usize,
    pub degenerate: bool,
}

fn validate_groups(groups: &[Vec<f64>]) -> Result<()> {
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
        if let Some(bad) = g.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidStatInput(format!(
                "group {i} contains a non-finite value {bad}"
            )));
        }
    }
    Ok(())
}

/// Rank-based omnibus test across groups: mid-ranks over the pooled data,
/// `H = 12/(N(N+1)) * sum(R_j^2/n_j) - 3(N+1)` divided by the tie
/// correction `1 - sum(t^3 - t)/(N^3 - N)`, with a chi-square upper-tail
/// p-value on `groups - 1` degrees of freedom.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KwResult> {
    validate_groups(groups)?;
    let df = groups.len() - 1;
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let n = pooled.len() as f64;
    let (ranks, ties) = mid_ranks(&pooled);

    let correction = 1.0 - ties.sum_t3_minus_t / (n * n * n - n);
    if ties.all_tied || correction <= 0.0 {
        return Ok(KwResult {
            h_statistic: 0.0,
            p_value: 1.0,
            degrees_of_freedom: df,
            degenerate: true,
        });
    }

    let mut h = 0.0;
    let mut offset = 0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        h += r * r / g.len() as f64;
        offset += g.len();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    h /= correction;

    Ok(KwResult {
        h_statistic: h,
        p_value: chi_square_sf(h, df),
        degrees_of_freedom: df,
        degenerate: false,
    })
}
