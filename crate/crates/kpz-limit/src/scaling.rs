//! Intermediate-disorder rescaling of log-gamma stationary walks.

use serde::{Deserialize, Serialize};

use stripgibbs_core::{logsumexp, Error, ModelKind, ModelParams, Result, RngStream};
use stripgibbs_stationary::walks::{log_gap_sum, WalkPair};
use stripgibbs_stationary::{sample_stationary_is_lg, IsConfig, IsRun};

use crate::marginals::{log_mean_se, MarginalSample};

/// Scaling parameters for one `eps`: strip width `N = L / eps` and bulk
/// parameter `alpha = 1/2 + 1/eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KpzScaling {
    /// Lattice spacing.
    pub epsilon: f64,
    /// Macroscopic interval length.
    pub l: f64,
    /// Strip width.
    pub n_steps: usize,
    /// Bulk log-gamma parameter.
    pub alpha: f64,
}

impl KpzScaling {
    /// Scaling for spacing `epsilon` on `[0, l]`; `l / epsilon` must be a positive integer.
    pub fn new(epsilon: f64, l: f64) -> Result<Self> {
        if !(epsilon > 0.0 && l > 0.0) {
            return Err(Error::ParamDomain(format!(
                "need eps > 0 and L > 0, got eps = {epsilon}, L = {l}"
            )));
        }
        let ratio = l / epsilon;
        let n_steps = ratio.round();
        if n_steps < 1.0 || (ratio - n_steps).abs() > 1e-9 * ratio {
            return Err(Error::ParamDomain(format!(
                "L / eps = {ratio} is not a positive integer"
            )));
        }
        Ok(Self {
            epsilon,
            l,
            n_steps: n_steps as usize,
            alpha: 0.5 + 1.0 / epsilon,
        })
    }

    /// Log-gamma parameters with homogeneous bulk `alpha` and boundary `(u, v)`.
    pub fn params(&self, u: f64, v: f64) -> Result<ModelParams> {
        ModelParams::homogeneous(ModelKind::LogGamma, self.n_steps, self.alpha, u, v)
    }
}

/// A rescaled walk `B(eps j) = -j log eps + L(j)`, `j = 0..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledProcess {
    /// Lattice spacing.
    pub epsilon: f64,
    /// Values at the grid points `eps j`.
    pub values: Vec<f64>,
}

impl ScaledProcess {
    /// Rescale the walk `walk(j)`, `j = 0..=N`.
    pub fn from_walk(epsilon: f64, walk: impl Iterator<Item = f64>) -> Self {
        let le = epsilon.ln();
        Self {
            epsilon,
            values: walk.enumerate().map(|(j, y)| y - j as f64 * le).collect(),
        }
    }

    /// Grid points `eps j`.
    pub fn grid(&self) -> Vec<f64> {
        (0..self.values.len())
            .map(|j| self.epsilon * j as f64)
            .collect()
    }

    /// Value at `x`, linearly interpolated between grid points and clamped to the grid.
    pub fn at(&self, x: f64) -> f64 {
        interpolate(&self.values, x / self.epsilon)
    }
}

/// Linear interpolation of `values` (indexed `0, 1, ...`) at fractional index `t`.
pub(crate) fn interpolate(values: &[f64], t: f64) -> f64 {
    let last = values.len() - 1;
    let t = t.clamp(0.0, last as f64);
    let j = t.floor() as usize;
    let frac = t - j as f64;
    if frac <= 0.0 {
        values[j]
    } else {
        values[j] + frac * (values[j + 1] - values[j])
    }
}

/// A pair of rescaled walks with its importance log-weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledPair {
    /// Rescaled first walk.
    pub b1: ScaledProcess,
    /// Rescaled second walk.
    pub b2: ScaledProcess,
    /// Log importance weight carried over from the walk sample.
    pub log_weight: f64,
}

/// Rescale every sample of a log-gamma stationary run at spacing `epsilon`.
pub fn rescale_stationary(run: &IsRun<f64>, epsilon: f64) -> Vec<ScaledPair> {
    run.samples
        .iter()
        .map(|s| {
            let w = &s.walks;
            ScaledPair {
                b1: ScaledProcess::from_walk(epsilon, (0..=w.n()).map(|j| w.l1_at(j))),
                b2: ScaledProcess::from_walk(epsilon, (0..=w.n()).map(|j| w.l2_at(j))),
                log_weight: s.log_weight,
            }
        })
        .collect()
}

/// Weighted marginals of the rescaled first walk together with the discrete
/// analogues of the Hariya-Yor normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescaledRun {
    /// Scaling used.
    pub scaling: KpzScaling,
    /// `B_1` at the observation points.
    pub marginals: MarginalSample,
    /// `log E[S^{-(u+v)}]` under independent log-inverse-gamma walks with
    /// parameters `alpha + v`, `alpha - v`, where `S = sum_j e^{L_2(j) - L_1(j-1)}`.
    pub log_z_discrete: f64,
    /// Standard error of `log_z_discrete`.
    pub log_z_discrete_se: f64,
    /// Moment `log E[S^k]` with `k = max(-(u+v), 1) + 1`, a tail-weight proxy.
    pub log_moment_proxy: f64,
}

/// Sample the log-gamma stationary law at scaling `scaling` and record the
/// rescaled first walk at `points`.
pub fn sample_rescaled_lg(
    scaling: &KpzScaling,
    u: f64,
    v: f64,
    n: usize,
    points: &[f64],
    stream: RngStream,
) -> Result<RescaledRun> {
    if !(scaling.alpha - v > 0.0) {
        return Err(Error::ParamDomain(format!(
            "alpha - v = {} must be positive",
            scaling.alpha - v
        )));
    }
    let params = scaling.params(u, v)?;
    let run = sample_stationary_is_lg(&params, &params.bulk, IsConfig::new(n, 1.0), stream)?;
    let eps = scaling.epsilon;
    let le = eps.ln();
    let values = points
        .iter()
        .map(|&x| {
            run.samples
                .iter()
                .map(|s| {
                    let row: Vec<f64> = (0..=s.walks.n())
                        .map(|j| s.walks.l1_at(j) - j as f64 * le)
                        .collect();
                    interpolate(&row, x / eps)
                })
                .collect()
        })
        .collect();
    let lgs: Vec<f64> = run.samples.iter().map(|s| log_gap_sum(&s.walks)).collect();
    let log_mean = |k: f64| {
        let t: Vec<f64> = lgs.iter().map(|&g| k * g).collect();
        logsumexp(&t) - (t.len() as f64).ln()
    };
    Ok(RescaledRun {
        scaling: *scaling,
        marginals: MarginalSample {
            points: points.to_vec(),
            values,
            log_weights: run.log_weights(),
        },
        log_z_discrete: log_mean(-(u + v)),
        log_z_discrete_se: log_mean_se(&lgs.iter().map(|&g| -(u + v) * g).collect::<Vec<_>>()),
        log_moment_proxy: log_mean((-(u + v)).max(1.0) + 1.0),
    })
}

/// Riemann-sum form of the gap functional: `log(eps sum_j e^{B_2(eps j) - B_1(eps (j-1))})`.
pub fn scaled_log_gap_sum(pair: &ScaledPair) -> f64 {
    let terms: Vec<f64> = (1..pair.b1.values.len())
        .map(|j| pair.b2.values[j] - pair.b1.values[j - 1])
        .collect();
    logsumexp(&terms) + pair.b1.epsilon.ln()
}

/// Walk pair of the sample underlying `pair`.
pub fn unscale(pair: &ScaledPair) -> WalkPair<f64> {
    let le = pair.b1.epsilon.ln();
    let back = |p: &ScaledProcess| {
        (1..p.values.len())
            .map(|j| p.values[j] + j as f64 * le)
            .collect()
    };
    WalkPair {
        l1: back(&pair.b1),
        l2: back(&pair.b2),
    }
}
