//! Weighted empirical distribution functions.

use stripgibbs_core::{Error, Result};

use crate::weights::{ess, normalize_log_weights};

/// A weighted sample sorted by value, with weights normalized to sum to one.
///
/// Equal values are merged into a single atom.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEcdf {
    values: Vec<f64>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
    ess: f64,
}

impl WeightedEcdf {
    /// Builds the ECDF from values and nonnegative weights.
    pub fn new(values: &[f64], weights: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        assert_eq!(
            values.len(),
            weights.len(),
            "values and weights differ in length"
        );
        let e = ess(weights)?;
        let total: f64 = weights.iter().sum();
        let mut idx: Vec<usize> = (0..values.len()).filter(|&i| weights[i] > 0.0).collect();
        idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let mut vs: Vec<f64> = Vec::with_capacity(idx.len());
        let mut ws: Vec<f64> = Vec::with_capacity(idx.len());
        for i in idx {
            let w = weights[i] / total;
            match vs.last() {
                Some(&last) if last == values[i] => *ws.last_mut().expect("nonempty") += w,
                _ => {
                    vs.push(values[i]);
                    ws.push(w);
                }
            }
        }
        let mut acc = 0.0;
        let cumulative = ws
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect();
        Ok(Self {
            values: vs,
            weights: ws,
            cumulative,
            ess: e,
        })
    }

    /// Equal weights.
    pub fn unweighted(values: &[f64]) -> Result<Self> {
        Self::new(values, &vec![1.0; values.len()])
    }

    /// From values and log-weights.
    pub fn from_log_weights(values: &[f64], log_w: &[f64]) -> Result<Self> {
        let w = normalize_log_weights(log_w)?;
        Self::new(values, &w)
    }

    /// Distinct atoms in increasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Normalized atom weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Effective sample size of the input weights.
    pub fn ess(&self) -> f64 {
        self.ess
    }

    /// `F(x) = P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= x);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1].min(1.0)
        }
    }

    /// Weighted mean.
    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * w)
            .sum()
    }

    /// Weighted mean of `f(X)`.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(&v, w)| f(v) * w)
            .sum()
    }

    /// Smallest atom `x` with `F(x) >= q`.
    pub fn quantile(&self, q: f64) -> f64 {
        let k = self.cumulative.partition_point(|&c| c < q);
        self.values[k.min(self.values.len() - 1)]
    }
}
