//! Importance weights and discrete distances.

use std::collections::BTreeMap;

use stripgibbs_core::{logsumexp, Error, Result};

/// Effective sample size `(sum w)^2 / sum w^2`.
pub fn ess(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptySample);
    }
    let s: f64 = weights.iter().sum();
    let s2: f64 = weights.iter().map(|w| w * w).sum();
    if s <= 0.0 || s2 <= 0.0 {
        return Err(Error::AllZeroWeights);
    }
    Ok(s * s / s2)
}

/// Effective sample size from log-weights, computed without overflow.
pub fn ess_from_log_weights(log_w: &[f64]) -> Result<f64> {
    if log_w.is_empty() {
        return Err(Error::EmptySample);
    }
    let m = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return Err(Error::AllZeroWeights);
    }
    let w: Vec<f64> = log_w.iter().map(|l| (l - m).exp()).collect();
    ess(&w)
}

/// Self-normalized weights `w_i / sum w` from log-weights.
pub fn normalize_log_weights(log_w: &[f64]) -> Result<Vec<f64>> {
    if log_w.is_empty() {
        return Err(Error::EmptySample);
    }
    let z = logsumexp(log_w);
    if !z.is_finite() {
        return Err(Error::AllZeroWeights);
    }
    Ok(log_w.iter().map(|l| (l - z).exp()).collect())
}

/// Total-variation distance `sum |p - q| / 2` between two tables on the
/// support `0..max(len)`; missing entries count as zero.
pub fn tv_discrete(p: &[f64], q: &[f64]) -> f64 {
    let n = p.len().max(q.len());
    let at = |t: &[f64], i: usize| t.get(i).copied().unwrap_or(0.0);
    0.5 * (0..n).map(|i| (at(p, i) - at(q, i)).abs()).sum::<f64>()
}

/// Total-variation distance between two tables keyed by atom.
pub fn tv_discrete_map<K: Ord + Clone>(p: &BTreeMap<K, f64>, q: &BTreeMap<K, f64>) -> f64 {
    let mut keys: Vec<&K> = p.keys().chain(q.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (p.get(k).copied().unwrap_or(0.0) - q.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}
