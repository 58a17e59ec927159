//! One-sample goodness-of-fit tests.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::ecdf::WeightedEcdf;

/// Result of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    /// Pearson statistic.
    pub statistic: f64,
    /// Degrees of freedom after merging sparse bins.
    pub dof: usize,
    /// Upper-tail probability.
    pub p_value: f64,
}

/// Pearson chi-square test of `observed[k]` counts against `probs[k]`.
///
/// Mass not covered by `probs` and counts beyond its length form a final
/// tail bin. Adjacent bins are merged from the right until every expected
/// count is at least 5.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquareResult {
    let total: u64 = observed.iter().sum();
    let n = total as f64;
    let k = probs.len();
    let mut obs: Vec<f64> = (0..k)
        .map(|i| observed.get(i).copied().unwrap_or(0) as f64)
        .collect();
    let mut exp: Vec<f64> = probs.iter().map(|p| p * n).collect();
    let tail_obs: u64 = observed.iter().skip(k).sum();
    let tail_p = (1.0 - probs.iter().sum::<f64>()).max(0.0);
    obs.push(tail_obs as f64);
    exp.push(tail_p * n);
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for i in (0..obs.len()).rev() {
        o_acc += obs[i];
        e_acc += exp[i];
        if e_acc >= 5.0 {
            bins.push((o_acc, e_acc));
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 || o_acc > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += o_acc;
                last.1 += e_acc;
            }
            None => bins.push((o_acc, e_acc)),
        }
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = bins.len().saturating_sub(1).max(1);
    let p_value = 1.0
        - ChiSquared::new(dof as f64)
            .expect("positive dof")
            .cdf(statistic);
    ChiSquareResult {
        statistic,
        dof,
        p_value,
    }
}

/// Kolmogorov survival function `Q(t) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 t^2}`.
pub fn kolmogorov_q(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * t * t).exp();
        s += if k as i64 % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// One-sample KS statistic of a weighted sample against a continuous CDF,
/// with the asymptotic p-value at sample size equal to the effective sample size.
pub fn ks_one_sample<F: Fn(f64) -> f64>(sample: &WeightedEcdf, cdf: F) -> (f64, f64) {
    let mut d = 0.0f64;
    let mut below = 0.0;
    for (&x, &w) in sample.values().iter().zip(sample.weights()) {
        let f = cdf(x);
        let above = below + w;
        d = d.max((f - below).abs()).max((above - f).abs());
        below = above;
    }
    let n = sample.ess();
    let sn = n.sqrt();
    let p = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
    (d, p)
}
