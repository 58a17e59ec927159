//! Hariya-Yor process: drifted Brownian pairs reweighted by an exponential functional.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{logsumexp, Error, Result, RngStream};
use stripgibbs_stats::ess_from_log_weights;

use crate::marginals::{log_mean_se, MarginalSample};
use crate::scaling::interpolate;

/// Samples per random substream.
const CHUNK: usize = 1024;

/// Settings for Hariya-Yor sampling on `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyConfig {
    /// Left boundary parameter.
    pub u: f64,
    /// Right boundary parameter.
    pub v: f64,
    /// Interval length.
    pub l: f64,
    /// Number of grid intervals.
    pub grid_m: usize,
    /// Number of samples.
    pub n: usize,
}

impl HyConfig {
    /// Configuration with the default grid of 1024 intervals.
    pub fn new(u: f64, v: f64, l: f64, n: usize) -> Self {
        Self {
            u,
            v,
            l,
            grid_m: 1024,
            n,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.l > 0.0)
            || self.grid_m < 2
            || self.n == 0
            || !self.u.is_finite()
            || !self.v.is_finite()
        {
            return Err(Error::ParamDomain(format!(
                "invalid Hariya-Yor configuration {self:?}"
            )));
        }
        Ok(())
    }

    /// Grid spacing `L / M`.
    pub fn dx(&self) -> f64 {
        self.l / self.grid_m as f64
    }

    /// Grid points `0, L/M, ..., L`.
    pub fn grid(&self) -> Vec<f64> {
        (0..=self.grid_m).map(|k| k as f64 * self.dx()).collect()
    }
}

/// One weighted Brownian pair on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrownianPairSample {
    /// Grid points.
    pub grid: Vec<f64>,
    /// First path, drift `-v`.
    pub b1: Vec<f64>,
    /// Second path, drift `v`.
    pub b2: Vec<f64>,
    /// `-(u+v) log int_0^L e^{-(B_1 - B_2)} ds`, trapezoid rule.
    pub log_weight: f64,
}

/// Weighted Hariya-Yor marginals with normalization estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyRun {
    /// The configuration used.
    pub config: HyConfig,
    /// `B_1` at the observation points.
    pub marginals: MarginalSample,
    /// Effective sample size.
    pub ess: f64,
    /// `log E[I^{-(u+v)}]` under the drifted pair.
    pub log_z_drifted: f64,
    /// Standard error of `log_z_drifted` and of `log_z`.
    pub log_z_se: f64,
    /// `log Z = v^2 L + log E[I^{-(u+v)}]`, the normalization relative to driftless motions.
    pub log_z: f64,
}

/// `log` of the trapezoid approximation to `int e^{-d(s)} ds` on a uniform grid.
pub fn trapezoid_log_integral(d: &[f64], dx: f64) -> f64 {
    let m = d.len() - 1;
    let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
    let mut s = 0.0;
    for (k, &dk) in d.iter().enumerate() {
        let w = if k == 0 || k == m { 0.5 } else { 1.0 };
        s += w * (lo - dk).exp();
    }
    -lo + (s * dx).ln()
}

/// Fill `b1`, `b2` with Brownian paths of drifts `-v`, `v` on a grid of spacing `dx`.
pub(crate) fn draw_pair<R: Rng + ?Sized>(
    rng: &mut R,
    v: f64,
    dx: f64,
    b1: &mut [f64],
    b2: &mut [f64],
) {
    let sd = dx.sqrt();
    b1[0] = 0.0;
    b2[0] = 0.0;
    for k in 1..b1.len() {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        b1[k] = b1[k - 1] - v * dx + sd * z1;
        b2[k] = b2[k - 1] + v * dx + sd * z2;
    }
}

fn hy_log_weight(cfg: &HyConfig, b1: &[f64], b2: &[f64], diff: &mut Vec<f64>) -> f64 {
    if cfg.u + cfg.v == 0.0 {
        return 0.0;
    }
    diff.clear();
    diff.extend(b1.iter().zip(b2).map(|(x, y)| x - y));
    -(cfg.u + cfg.v) * trapezoid_log_integral(diff, cfg.dx())
}

/// Full weighted Hariya-Yor paths. Memory grows as `n * M`; use
/// [`sample_hariya_yor`] for large runs.
pub fn sample_hariya_yor_paths(
    cfg: &HyConfig,
    stream: RngStream,
) -> Result<Vec<BrownianPairSample>> {
    cfg.check()?;
    let grid = cfg.grid();
    let chunks = cfg.n.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream.substream(c as u64).rng();
            let len = CHUNK.min(cfg.n - c * CHUNK);
            let mut diff = Vec::with_capacity(cfg.grid_m + 1);
            (0..len)
                .map(|_| {
                    let mut b1 = vec![0.0; cfg.grid_m + 1];
                    let mut b2 = vec![0.0; cfg.grid_m + 1];
                    draw_pair(&mut rng, cfg.v, cfg.dx(), &mut b1, &mut b2);
                    let log_weight = hy_log_weight(cfg, &b1, &b2, &mut diff);
                    BrownianPairSample {
                        grid: grid.clone(),
                        b1,
                        b2,
                        log_weight,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

/// Weighted Hariya-Yor sample recording `B_1` at `points` only. The random
/// stream layout matches [`sample_hariya_yor_paths`].
pub fn sample_hariya_yor(cfg: &HyConfig, points: &[f64], stream: RngStream) -> Result<HyRun> {
    cfg.check()?;
    let chunks = cfg.n.div_ceil(CHUNK);
    let rows: Vec<(Vec<f64>, f64)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream.substream(c as u64).rng();
            let len = CHUNK.min(cfg.n - c * CHUNK);
            let mut b1 = vec![0.0; cfg.grid_m + 1];
            let mut b2 = vec![0.0; cfg.grid_m + 1];
            let mut diff = Vec::with_capacity(cfg.grid_m + 1);
            (0..len)
                .map(|_| {
                    draw_pair(&mut rng, cfg.v, cfg.dx(), &mut b1, &mut b2);
                    let lw = hy_log_weight(cfg, &b1, &b2, &mut diff);
                    (
                        points
                            .iter()
                            .map(|&x| interpolate(&b1, x / cfg.dx()))
                            .collect(),
                        lw,
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let values = (0..points.len())
        .map(|p| rows.iter().map(|r| r.0[p]).collect())
        .collect();
    let log_weights: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let ess = ess_from_log_weights(&log_weights)?;
    if !(ess >= 1.0) {
        return Err(Error::DegenerateWeights { ess, floor: 1.0 });
    }
    let log_z_se = log_mean_se(&log_weights);
    let log_z_drifted = logsumexp(&log_weights) - (cfg.n as f64).ln();
    Ok(HyRun {
        config: *cfg,
        marginals: MarginalSample {
            points: points.to_vec(),
            values,
            log_weights,
        },
        ess,
        log_z_drifted,
        log_z_se,
        log_z: cfg.v * cfg.v * cfg.l + log_z_drifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_is_exact_for_linear_exponent_limit() {
        // int_0^1 e^{-s} ds = 1 - e^{-1}
        let m = 4096;
        let d: Vec<f64> = (0..=m).map(|k| k as f64 / m as f64).collect();
        let got = trapezoid_log_integral(&d, 1.0 / m as f64);
        assert!((got - (1.0 - (-1.0f64).exp()).ln()).abs() < 1e-7);
        // shifting d by a constant shifts the log integral
        let shifted: Vec<f64> = d.iter().map(|x| x + 300.0).collect();
        assert!((trapezoid_log_integral(&shifted, 1.0 / m as f64) - got + 300.0).abs() < 1e-9);
    }

    #[test]
    fn paths_and_marginals_share_the_random_stream() {
        let cfg = HyConfig {
            u: 0.8,
            v: 0.3,
            l: 1.0,
            grid_m: 64,
            n: 1500,
        };
        let paths = sample_hariya_yor_paths(&cfg, RngStream::new(9, 0)).unwrap();
        let run = sample_hariya_yor(&cfg, &[0.5, 1.0], RngStream::new(9, 0)).unwrap();
        for (i, p) in paths.iter().enumerate() {
            assert_eq!(p.b1[32], run.marginals.values[0][i]);
            assert_eq!(p.b1[64], run.marginals.values[1][i]);
            assert_eq!(p.log_weight, run.marginals.log_weights[i]);
        }
    }

    #[test]
    fn zero_total_boundary_gives_unit_weights() {
        let cfg = HyConfig {
            u: -0.4,
            v: 0.4,
            l: 1.0,
            grid_m: 32,
            n: 500,
        };
        let run = sample_hariya_yor(&cfg, &[1.0], RngStream::new(1, 0)).unwrap();
        assert!(run.marginals.log_weights.iter().all(|&w| w == 0.0));
        assert!((run.ess - 500.0).abs() < 1e-9);
        assert!((run.log_z - 0.16).abs() < 1e-12);
    }

    #[test]
    fn drifts_are_minus_v_and_plus_v() {
        let cfg = HyConfig {
            u: 0.0,
            v: 0.7,
            l: 2.0,
            grid_m: 16,
            n: 4000,
        };
        let paths = sample_hariya_yor_paths(&cfg, RngStream::new(2, 0)).unwrap();
        let m1 = paths.iter().map(|p| p.b1[16]).sum::<f64>() / 4000.0;
        let m2 = paths.iter().map(|p| p.b2[16]).sum::<f64>() / 4000.0;
        // standard error sqrt(2 / 4000) ~ 0.022
        assert!(
            (m1 + 1.4).abs() < 0.1 && (m2 - 1.4).abs() < 0.1,
            "{m1} {m2}"
        );
    }

    #[test]
    fn weight_depends_only_on_the_difference() {
        let cfg = HyConfig {
            u: 1.3,
            v: -0.2,
            l: 1.5,
            grid_m: 128,
            n: 20,
        };
        let mut diff = Vec::new();
        for p in sample_hariya_yor_paths(&cfg, RngStream::new(3, 0)).unwrap() {
            let shift: Vec<f64> = p.grid.iter().map(|x| (3.0 * x).sin()).collect();
            let b1: Vec<f64> = p.b1.iter().zip(&shift).map(|(a, s)| a + s).collect();
            let b2: Vec<f64> = p.b2.iter().zip(&shift).map(|(a, s)| a + s).collect();
            assert!((hy_log_weight(&cfg, &b1, &b2, &mut diff) - p.log_weight).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_configuration() {
        assert!(sample_hariya_yor(
            &HyConfig {
                u: 1.0,
                v: 1.0,
                l: 0.0,
                grid_m: 8,
                n: 10
            },
            &[0.0],
            RngStream::new(0, 0)
        )
        .is_err());
        assert!(sample_hariya_yor_paths(
            &HyConfig {
                u: 1.0,
                v: 1.0,
                l: 1.0,
                grid_m: 0,
                n: 10
            },
            RngStream::new(0, 0)
        )
        .is_err());
    }
}
