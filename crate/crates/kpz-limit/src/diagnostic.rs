//! Convergence of rescaled log-gamma marginals to the Hariya-Yor process.

use serde::{Deserialize, Serialize};

use stripgibbs_core::{Error, Result, RngStream};

use crate::brownian::{sample_hariya_yor, HyConfig};
use crate::marginals::ks_max_bootstrap;
use crate::scaling::{sample_rescaled_lg, KpzScaling};

/// Settings for [`convergence_diagnostic`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticConfig {
    /// Left boundary parameter.
    pub u: f64,
    /// Right boundary parameter.
    pub v: f64,
    /// Interval length.
    pub l: f64,
    /// Spacings, in the order the trend is checked.
    pub epsilons: Vec<f64>,
    /// Samples per law.
    pub n: usize,
    /// Brownian grid intervals.
    pub grid_m: usize,
    /// Observation points in `[0, L]`.
    pub points: Vec<f64>,
    /// Bootstrap replicates for the KS intervals.
    pub n_boot: usize,
}

impl DiagnosticConfig {
    /// Observation points `L/4`, `L/2`, `L`, grid of 1024 intervals and 1000 bootstrap replicates.
    pub fn new(u: f64, v: f64, l: f64, epsilons: Vec<f64>, n: usize) -> Self {
        Self {
            u,
            v,
            l,
            epsilons,
            n,
            grid_m: 1024,
            points: vec![l / 4.0, l / 2.0, l],
            n_boot: 1000,
        }
    }
}

/// Diagnostics at one spacing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    /// Spacing.
    pub epsilon: f64,
    /// Strip width.
    pub n_steps: usize,
    /// Bulk parameter.
    pub alpha: f64,
    /// Effective sample size of the log-gamma sample.
    pub ess: f64,
    /// Weighted KS distance to the Hariya-Yor sample at each observation point.
    pub ks_by_point: Vec<f64>,
    /// Largest of `ks_by_point`.
    pub ks: f64,
    /// Lower end of the 95% bootstrap interval of `ks`.
    pub ks_lo: f64,
    /// Upper end of the 95% bootstrap interval of `ks`.
    pub ks_hi: f64,
    /// Discrete normalization `log E[S^{-(u+v)}]`.
    pub log_z_discrete: f64,
    /// Standard error of `log_z_discrete`.
    pub log_z_discrete_se: f64,
    /// Tail-weight proxy `log E[S^k]`.
    pub log_moment_proxy: f64,
}

/// Rows for every spacing plus the Hariya-Yor reference quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    /// The configuration used.
    pub config: DiagnosticConfig,
    /// One row per spacing.
    pub rows: Vec<ConvergenceRow>,
    /// Effective sample size of the Hariya-Yor sample.
    pub hy_ess: f64,
    /// `log E[I^{-(u+v)}]` under the drifted Brownian pair.
    pub hy_log_z_drifted: f64,
    /// Standard error of the Hariya-Yor normalization estimates.
    pub hy_log_z_se: f64,
    /// `v^2 L + log E[I^{-(u+v)}]`.
    pub hy_log_z: f64,
}

impl ConvergenceTable {
    /// Indices `k` where the KS distance at spacing `k + 1` is significantly larger
    /// than at spacing `k`, meaning the bootstrap intervals separate.
    pub fn trend_violations(&self) -> Vec<usize> {
        self.rows
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1].ks_lo > w[0].ks_hi)
            .map(|(k, _)| k)
            .collect()
    }

    /// Whether KS is non-increasing along the spacings within bootstrap error.
    pub fn trend_ok(&self) -> bool {
        self.trend_violations().is_empty()
    }

    /// Distance between the last discrete normalization and the Hariya-Yor one
    /// in units of their combined standard error.
    pub fn z_discrepancy_sigmas(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| {
            (r.log_z_discrete - self.hy_log_z_drifted).abs()
                / r.log_z_discrete_se.hypot(self.hy_log_z_se)
        })
    }

    /// KS distance at the last spacing.
    pub fn final_ks(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ks)
    }
}

/// Compare rescaled log-gamma stationary walks at each spacing with one
/// Hariya-Yor reference sample.
pub fn convergence_diagnostic(
    cfg: &DiagnosticConfig,
    stream: RngStream,
) -> Result<ConvergenceTable> {
    if cfg.epsilons.is_empty() || cfg.points.is_empty() || cfg.n_boot == 0 {
        return Err(Error::ParamDomain(
            "diagnostic needs spacings, observation points and bootstrap replicates".into(),
        ));
    }
    if cfg.points.iter().any(|&x| !(0.0..=cfg.l).contains(&x)) {
        return Err(Error::ParamDomain(format!(
            "observation points must lie in [0, {}]",
            cfg.l
        )));
    }
    let hy_cfg = HyConfig {
        u: cfg.u,
        v: cfg.v,
        l: cfg.l,
        grid_m: cfg.grid_m,
        n: cfg.n,
    };
    let hy = sample_hariya_yor(&hy_cfg, &cfg.points, stream.substream(0))?;
    let mut rows = Vec::with_capacity(cfg.epsilons.len());
    for (k, &eps) in cfg.epsilons.iter().enumerate() {
        let scaling = KpzScaling::new(eps, cfg.l)?;
        let lg = sample_rescaled_lg(
            &scaling,
            cfg.u,
            cfg.v,
            cfg.n,
            &cfg.points,
            stream.substream(1 + k as u64),
        )?;
        let ks_by_point = lg.marginals.ks_by_point(&hy.marginals)?;
        let ks = ks_by_point.iter().copied().fold(0.0, f64::max);
        let (ks_lo, ks_hi) = ks_max_bootstrap(
            &lg.marginals,
            &hy.marginals,
            cfg.n_boot,
            stream.substream(1000 + k as u64),
        )?;
        rows.push(ConvergenceRow {
            epsilon: eps,
            n_steps: scaling.n_steps,
            alpha: scaling.alpha,
            ess: lg.marginals.ess()?,
            ks_by_point,
            ks,
            ks_lo,
            ks_hi,
            log_z_discrete: lg.log_z_discrete,
            log_z_discrete_se: lg.log_z_discrete_se,
            log_moment_proxy: lg.log_moment_proxy,
        });
    }
    Ok(ConvergenceTable {
        config: cfg.clone(),
        rows,
        hy_ess: hy.ess,
        hy_log_z_drifted: hy.log_z_drifted,
        hy_log_z_se: hy.log_z_se,
        hy_log_z: hy.log_z,
    })
}
