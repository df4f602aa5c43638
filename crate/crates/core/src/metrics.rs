//! Error measurement and ranking.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// `||truth - approx||_2 / ||truth||_2`. Normalized by the first argument
/// only, so it is not symmetric.
pub fn relative_error(truth: &[f64], approx: &[f64]) -> Result<f64> {
    if truth.len() != approx.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            actual: approx.len(),
        });
    }
    let norm = truth.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidParameter(
            "reference vector has zero norm".into(),
        ));
    }
    let diff = truth
        .iter()
        .zip(approx)
        .map(|(t, a)| (t - a) * (t - a))
        .sum::<f64>()
        .sqrt();
    Ok(diff / norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedNode {
    pub label: u64,
    pub score: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
}

/// Sorts nodes by descending score; equal scores are ordered by ascending
/// label. Ranks are consecutive positions `1..=N`.
pub fn rank_vector(scores: &[f64], labels: &[u64]) -> Result<Vec<RankedNode>> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            actual: scores.len(),
        });
    }
    if let Some(k) = scores.iter().position(|x| x.is_nan()) {
        return Err(Error::InvalidParameter(format!(
            "score of node label {} is NaN",
            labels[k]
        )));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(Ordering::Equal)
            .then(labels[a].cmp(&labels[b]))
    });
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(pos, k)| RankedNode {
            label: labels[k],
            score: scores[k],
            rank: pos + 1,
        })
        .collect())
}
