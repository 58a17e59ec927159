//! Random-walk Metropolis sampling of the reweighted walk pairs.
//!
//! A fallback for parameter ranges where importance weights degenerate. The
//! state is the `2N` increments; each proposal perturbs one coordinate,
//! by `+-1` (geometric) or by a centred normal step (log-gamma), and is
//! accepted with the Metropolis ratio of `V` times the increment densities.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use stripgibbs_core::special::trigamma;
use stripgibbs_core::{log_inv_gamma_logpdf, Error, ModelKind, ModelParams, Result, RngStream};

use crate::importance::IsRun;
use crate::walks::{log_v_lgg, log_v_lpp, WalkPair, WeightedSample};

/// Metropolis settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    /// Number of retained samples.
    pub n: usize,
    /// Sweeps discarded before the first retained sample.
    pub burn_in: usize,
    /// Sweeps between retained samples; a sweep is `2N` proposals.
    pub thin: usize,
}

fn log_target(params: &ModelParams, labels: &[f64], x1: &[f64], x2: &[f64]) -> f64 {
    match params.model {
        ModelKind::GeometricLpp => {
            if x1.iter().chain(x2).any(|&k| k < 0.0) {
                return f64::NEG_INFINITY;
            }
            let to_i = |x: &[f64]| x.iter().map(|&k| k as i64).collect::<Vec<_>>();
            let w = WalkPair::from_increments(&to_i(x1), &to_i(x2));
            let lp: f64 = labels
                .iter()
                .zip(x1.iter().zip(x2))
                .map(|(&b, (&p, &q))| (p + q) * b.ln())
                .sum();
            log_v_lpp(&w, params.left, params.right) + lp
        }
        ModelKind::LogGamma => {
            let w = WalkPair::from_increments(x1, x2);
            let lp: f64 = labels
                .iter()
                .zip(x1.iter().zip(x2))
                .map(|(&b, (&p, &q))| log_inv_gamma_logpdf(b, p) + log_inv_gamma_logpdf(b, q))
                .sum();
            log_v_lgg(&w, params.left, params.right) + lp
        }
    }
}

/// Metropolis samples of the stationary pair on the horizontal path with
/// edge labels `labels`, returned with unit weights.
pub fn sample_stationary_mcmc(
    params: &ModelParams,
    labels: &[f64],
    cfg: McmcConfig,
    stream: RngStream,
) -> Result<IsRun<f64>> {
    let n = labels.len();
    if n == 0 || cfg.n == 0 {
        return Err(Error::EmptySample);
    }
    let mut rng = stream.rng();
    let mut x = [vec![0.0; n], vec![0.0; n]];
    let steps: Vec<f64> = labels
        .iter()
        .map(|&b| {
            if params.model == ModelKind::LogGamma {
                1.2 * trigamma(b).sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let mut cur = log_target(params, labels, &x[0], &x[1]);
    let unit = Normal::new(0.0, 1.0).expect("valid normal");
    let mut out = Vec::with_capacity(cfg.n);
    let sweeps = cfg.burn_in + cfg.n * cfg.thin.max(1);
    for sweep in 0..sweeps {
        for _ in 0..2 * n {
            let layer = rng.random_range(0..2);
            let j = rng.random_range(0..n);
            let old = x[layer][j];
            x[layer][j] += match params.model {
                ModelKind::GeometricLpp => {
                    if rng.random_bool(0.5) {
                        1.0
                    } else {
                        -1.0
                    }
                }
                ModelKind::LogGamma => steps[j] * unit.sample(&mut rng),
            };
            let prop = log_target(params, labels, &x[0], &x[1]);
            if prop - cur >= 0.0 || rng.random::<f64>().ln() < prop - cur {
                cur = prop;
            } else {
                x[layer][j] = old;
            }
        }
        if sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.thin.max(1) == 0 && out.len() < cfg.n
        {
            out.push(WeightedSample {
                walks: WalkPair::from_increments(&x[0], &x[1]),
                log_weight: 0.0,
            });
        }
    }
    let len = out.len() as f64;
    Ok(IsRun {
        samples: out,
        ess: len,
        log_mean_weight: f64::NAN,
    })
}
