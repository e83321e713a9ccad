//! Ranking metric: area under the ROC curve computed as a normalized
//! Mann-Whitney U statistic, ties credited one half.

use crate::error::{Error, Result};

/// Positive iff the raw label exceeds 1/2; labels in this toolkit are 0/1.
pub fn binarize_labels(labels: &[f64]) -> Vec<bool> {
    labels.iter().map(|&y| y > 0.5).collect()
}

/// Probability that a uniformly random positive outranks a uniformly random
/// negative, with ties counted 1/2. Errors when one class is missing.
pub fn auc(labels: &[bool], scores: &[f64]) -> Result<f64> {
    if labels.len() != scores.len() {
        return Err(Error::LengthMismatch {
            context: "auc",
            expected: labels.len(),
            got: scores.len(),
        });
    }
    let positives = labels.iter().filter(|&&b| b).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::SingleClassLabels);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[i].total_cmp(&scores[j]));

    // average ranks over tied score groups, ranks 1-based
    let mut rank_sum_pos = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let avg_rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            if labels[idx] {
                rank_sum_pos += avg_rank;
            }
        }
        start = end;
    }

    let p = positives as f64;
    let n = negatives as f64;
    let u = rank_sum_pos - p * (p + 1.0) / 2.0;
    Ok(u / (p * n))
}
