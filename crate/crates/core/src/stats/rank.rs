//! Mid-rank assignment with tie bookkeeping.

/// Tie structure of a ranked pool: the sum of `t^3 - t` over tie groups,
/// needed by the Kruskal-Wallis and rank-sum tie corrections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieStats {
    pub sum_t3_minus_t: f64,
    /// True when every pooled value is identical (one tie group).
    pub all_tied: bool,
}

/// Assigns 1-based mid-ranks to `values`; tied values share the average of
/// the ranks they occupy. Values must be finite.
pub fn mid_ranks(values: &[f64]) -> (Vec<f64>, TieStats) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));

    let mut ranks = vec![0.0; n];
    let mut sum_t3_minus_t = 0.0;
    let mut largest_group = 0usize;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let group = j - i;
        largest_group = largest_group.max(group);
        let avg_rank = (i + j + 1) as f64 / 2.0; // mean of ranks i+1 ..= j
        for &idx in &order[i..j] {
            ranks[idx] = avg_rank;
        }
        let t = group as f64;
        sum_t3_minus_t += t * t * t - t;
        i = j;
    }
    (
        ranks,
        TieStats {
            sum_t3_minus_t,
            all_tied: largest_group == n && n > 0,
        },
    )
}
