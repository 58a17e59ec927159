//! Self-normalized importance sampling of the reweighted walk pairs.
//!
//! Proposals absorb as much of `V` as possible into the increment laws:
//!
//! * geometric: `L_1` increments `Geom(b_j c2)` and `L_2` increments
//!   `Geom(b_j c1)`, leaving the residual weight `(c1 c2)^{max_j(L_2(j) - L_1(j-1)) - L_2(N)}`,
//!   which is at most one when `c1 c2 >= 1` and identically one when `c1 c2 = 1`;
//! * log-gamma: `L_1` increments `log Gamma^{-1}(b_j + v)` and, when every
//!   `b_j > v`, `L_2` increments `log Gamma^{-1}(b_j - v)`, leaving the residual
//!   `(sum_j e^{L_2(j) - L_1(j-1)})^{-(u+v)}`; otherwise `L_2` keeps its
//!   untilted law and the residual also carries `e^{v L_2(N)}`.
//!
//! Log-weights include the proposal normalizing constants, so the mean
//! weight estimates the normalizing constant `E[V]` of the reweighted law.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::special::ln_gamma;
use stripgibbs_core::{
    Error, GeomSampler, LogInvGammaSampler, ModelKind, ModelParams, Result, RngStream,
};
use stripgibbs_stats::{ess_from_log_weights, WeightedEcdf};

use crate::walks::{log_gap_sum, max_gap, ToF64, WalkPair, WeightedSample};

/// Samples per random substream; fixes the stream layout independently of threads.
const CHUNK: usize = 2048;

/// Importance-sampling settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsConfig {
    /// Number of samples.
    pub n: usize,
    /// Smallest acceptable effective sample size.
    pub ess_floor: f64,
}

impl IsConfig {
    /// `n` samples with ESS floor `ess_floor`.
    pub fn new(n: usize, ess_floor: f64) -> Self {
        Self { n, ess_floor }
    }
}

/// A weighted sample set with its effective sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsRun<T> {
    /// Weighted walk pairs.
    pub samples: Vec<WeightedSample<T>>,
    /// Effective sample size `(sum w)^2 / sum w^2`.
    pub ess: f64,
    /// Log of the mean weight, an estimate of `log E[V]`.
    pub log_mean_weight: f64,
}

impl<T: ToF64> IsRun<T> {
    /// Log-weights of all samples.
    pub fn log_weights(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.log_weight).collect()
    }

    /// Weighted ECDF of `f(walks)`.
    pub fn ecdf_of<F: Fn(&WalkPair<T>) -> f64>(&self, f: F) -> Result<WeightedEcdf> {
        let values: Vec<f64> = self.samples.iter().map(|s| f(&s.walks)).collect();
        WeightedEcdf::from_log_weights(&values, &self.log_weights())
    }

    /// Weighted ECDF of the increment `L_1(j) - L_1(j-1)`, `j` in `1..=N`.
    pub fn ecdf_increment(&self, j: usize) -> Result<WeightedEcdf> {
        self.ecdf_of(|w| w.l1_at(j).to_f64() - w.l1_at(j - 1).to_f64())
    }

    /// Weighted ECDF of `L_1(j)`.
    pub fn ecdf_l1(&self, j: usize) -> Result<WeightedEcdf> {
        self.ecdf_of(|w| w.l1_at(j).to_f64())
    }

    /// The same samples with values converted to `f64`.
    pub fn to_f64(&self) -> IsRun<f64> {
        let conv = |v: &[T]| v.iter().map(|x| x.to_f64()).collect();
        IsRun {
            samples: self
                .samples
                .iter()
                .map(|s| WeightedSample {
                    walks: WalkPair {
                        l1: conv(&s.walks.l1),
                        l2: conv(&s.walks.l2),
                    },
                    log_weight: s.log_weight,
                })
                .collect(),
            ess: self.ess,
            log_mean_weight: self.log_mean_weight,
        }
    }
}

fn finish<T: Send>(samples: Vec<WeightedSample<T>>, floor: f64) -> Result<IsRun<T>> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let lw: Vec<f64> = samples.iter().map(|s| s.log_weight).collect();
    let ess = ess_from_log_weights(&lw)?;
    if !(ess >= floor) {
        return Err(Error::DegenerateWeights { ess, floor });
    }
    let log_mean_weight = stripgibbs_core::logsumexp(&lw) - (lw.len() as f64).ln();
    Ok(IsRun {
        samples,
        ess,
        log_mean_weight,
    })
}

fn parallel_draw<T: Send, F>(n: usize, stream: RngStream, draw: F) -> Vec<WeightedSample<T>>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> WeightedSample<T> + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream.substream(c as u64).rng();
            let len = CHUNK.min(n - c * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

fn check_labels(params: &ModelParams, labels: &[f64], model: ModelKind) -> Result<()> {
    if params.model != model {
        return Err(Error::ParamDomain(format!("expected {model:?} parameters")));
    }
    if labels.is_empty() {
        return Err(Error::ParamDomain(
            "at least one edge label is required".into(),
        ));
    }
    Ok(())
}

/// Geometric stationary law on a horizontal path with edge labels `labels`.
pub fn sample_stationary_is_lpp(
    params: &ModelParams,
    labels: &[f64],
    cfg: IsConfig,
    stream: RngStream,
) -> Result<IsRun<i64>> {
    check_labels(params, labels, ModelKind::GeometricLpp)?;
    let (c1, c2) = (params.left, params.right);
    let s1: Vec<GeomSampler> = labels
        .iter()
        .map(|&b| GeomSampler::new(b * c2))
        .collect::<Result<_>>()?;
    let s2: Vec<GeomSampler> = labels
        .iter()
        .map(|&b| GeomSampler::new(b * c1))
        .collect::<Result<_>>()?;
    let log_const: f64 = labels
        .iter()
        .map(|&b| 2.0 * (1.0 - b).ln() - (1.0 - b * c1).ln() - (1.0 - b * c2).ln())
        .sum();
    let log_c = (c1 * c2).ln();
    let n = labels.len();
    let samples = parallel_draw(cfg.n, stream, |rng| {
        let x1: Vec<i64> = s1.iter().map(|s| s.sample(rng) as i64).collect();
        let x2: Vec<i64> = s2.iter().map(|s| s.sample(rng) as i64).collect();
        let walks = WalkPair::from_increments(&x1, &x2);
        let e = max_gap(&walks) - walks.l2_at(n);
        let lw = if e == 0 {
            log_const
        } else {
            log_const + e as f64 * log_c
        };
        WeightedSample {
            walks,
            log_weight: lw,
        }
    });
    finish(samples, cfg.ess_floor)
}

/// Log-gamma stationary law on a horizontal path with edge labels `labels`.
pub fn sample_stationary_is_lg(
    params: &ModelParams,
    labels: &[f64],
    cfg: IsConfig,
    stream: RngStream,
) -> Result<IsRun<f64>> {
    check_labels(params, labels, ModelKind::LogGamma)?;
    let (u, v) = (params.left, params.right);
    let tilt2 = labels.iter().all(|&b| b - v > 0.0);
    let s1: Vec<LogInvGammaSampler> = labels
        .iter()
        .map(|&b| LogInvGammaSampler::new(b + v))
        .collect::<Result<_>>()?;
    let s2: Vec<LogInvGammaSampler> = labels
        .iter()
        .map(|&b| LogInvGammaSampler::new(if tilt2 { b - v } else { b }))
        .collect::<Result<_>>()?;
    let mut log_const: f64 = labels.iter().map(|&b| ln_gamma(b + v) - ln_gamma(b)).sum();
    if tilt2 {
        log_const += labels
            .iter()
            .map(|&b| ln_gamma(b - v) - ln_gamma(b))
            .sum::<f64>();
    }
    let n = labels.len();
    let samples = parallel_draw(cfg.n, stream, |rng| {
        let x1: Vec<f64> = s1.iter().map(|s| s.sample(rng)).collect();
        let x2: Vec<f64> = s2.iter().map(|s| s.sample(rng)).collect();
        let walks = WalkPair::from_increments(&x1, &x2);
        let mut lw = log_const;
        if u + v != 0.0 {
            lw -= (u + v) * log_gap_sum(&walks);
        }
        if !tilt2 && v != 0.0 {
            lw += v * walks.l2_at(n);
        }
        WeightedSample {
            walks,
            log_weight: lw,
        }
    });
    finish(samples, cfg.ess_floor)
}

/// Stationary law on the horizontal path at the origin (labels `a_1..a_N`),
/// for either model, with values as `f64`.
pub fn sample_stationary_is(
    params: &ModelParams,
    cfg: IsConfig,
    stream: RngStream,
) -> Result<IsRun<f64>> {
    match params.model {
        ModelKind::GeometricLpp => {
            Ok(sample_stationary_is_lpp(params, &params.bulk, cfg, stream)?.to_f64())
        }
        ModelKind::LogGamma => sample_stationary_is_lg(params, &params.bulk, cfg, stream),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::{log_v_lgg, log_v_lpp};

    #[test]
    fn weights_match_definition_up_to_proposal_ratio() {
        // geometric: log w = log V + log P - log Q
        let params = ModelParams::homogeneous(ModelKind::GeometricLpp, 3, 0.4, 1.3, 0.6).unwrap();
        let run = sample_stationary_is_lpp(
            &params,
            &params.bulk,
            IsConfig::new(200, 1.0),
            RngStream::new(1, 0),
        )
        .unwrap();
        let b: f64 = 0.4;
        for s in &run.samples {
            let x1 = s.walks.increments1();
            let x2 = s.walks.increments2();
            let lp: f64 = x1
                .iter()
                .chain(&x2)
                .map(|&k| (1.0 - b).ln() + k as f64 * b.ln())
                .sum();
            let lq: f64 = x1
                .iter()
                .map(|&k| (1.0 - b * 0.6).ln() + k as f64 * (b * 0.6).ln())
                .sum::<f64>()
                + x2.iter()
                    .map(|&k| (1.0 - b * 1.3).ln() + k as f64 * (b * 1.3).ln())
                    .sum::<f64>();
            let expect = log_v_lpp(&s.walks, 1.3, 0.6) + lp - lq;
            assert!((s.log_weight - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn lg_weights_match_definition() {
        use stripgibbs_core::log_inv_gamma_logpdf;
        for (u, v) in [(0.5, 0.3), (-0.2, 1.5)] {
            let params = ModelParams::homogeneous(ModelKind::LogGamma, 2, 1.0, u, v).unwrap();
            let run = sample_stationary_is_lg(
                &params,
                &params.bulk,
                IsConfig::new(100, 1.0),
                RngStream::new(2, 0),
            )
            .unwrap();
            let tilt2 = 1.0 - v > 0.0;
            for s in &run.samples {
                let x1 = s.walks.increments1();
                let x2 = s.walks.increments2();
                let lp: f64 = x1
                    .iter()
                    .chain(&x2)
                    .map(|&y| log_inv_gamma_logpdf(1.0, y))
                    .sum();
                let lq: f64 = x1
                    .iter()
                    .map(|&y| log_inv_gamma_logpdf(1.0 + v, y))
                    .sum::<f64>()
                    + x2.iter()
                        .map(|&y| log_inv_gamma_logpdf(if tilt2 { 1.0 - v } else { 1.0 }, y))
                        .sum::<f64>();
                let expect = log_v_lgg(&s.walks, u, v) + lp - lq;
                assert!(
                    (s.log_weight - expect).abs() < 1e-9,
                    "{} vs {expect}",
                    s.log_weight
                );
            }
        }
    }

    #[test]
    fn balanced_boundaries_give_unit_weights() {
        let params = ModelParams::homogeneous(ModelKind::GeometricLpp, 3, 0.4, 2.0, 0.5).unwrap();
        let run = sample_stationary_is_lpp(
            &params,
            &params.bulk,
            IsConfig::new(5000, 1.0),
            RngStream::new(3, 0),
        )
        .unwrap();
        assert!((run.ess - 5000.0).abs() < 1e-6);
        let params = ModelParams::homogeneous(ModelKind::LogGamma, 3, 1.0, -0.3, 0.3).unwrap();
        let run = sample_stationary_is_lg(
            &params,
            &params.bulk,
            IsConfig::new(5000, 1.0),
            RngStream::new(3, 0),
        )
        .unwrap();
        assert!((run.ess - 5000.0).abs() < 1e-6);
    }

    #[test]
    fn stream_layout_is_deterministic() {
        let params = ModelParams::homogeneous(ModelKind::LogGamma, 2, 1.0, 0.5, 0.5).unwrap();
        let a =
            sample_stationary_is(&params, IsConfig::new(5000, 1.0), RngStream::new(9, 4)).unwrap();
        let b =
            sample_stationary_is(&params, IsConfig::new(5000, 1.0), RngStream::new(9, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_weights_are_reported() {
        let params = ModelParams::homogeneous(ModelKind::LogGamma, 2, 1.0, 0.5, 0.5).unwrap();
        let err = sample_stationary_is(&params, IsConfig::new(100, 1e9), RngStream::new(9, 4))
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateWeights { .. }));
    }
}
