//! The universal limit `P_inf` and diffusive rescalings of both models toward it.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::special::{checked_digamma, checked_trigamma};
use stripgibbs_core::{Error, ModelKind, ModelParams, Result, RngStream};
use stripgibbs_stationary::walks::{ToF64, WalkPair};
use stripgibbs_stationary::{sample_stationary_is_lg, sample_stationary_is_lpp, IsConfig, IsRun};

use crate::brownian::draw_pair;
use crate::marginals::MarginalSample;
use crate::scaling::interpolate;

/// Samples per random substream.
const CHUNK: usize = 1024;

/// Minimum of a Brownian bridge from `a` to `b` over time `dt` with variance rate `rate`.
fn bridge_min<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64, dt: f64, rate: f64) -> f64 {
    let e: f64 = -(1.0 - rng.random::<f64>()).ln();
    0.5 * (a + b - ((a - b) * (a - b) + 2.0 * rate * dt * e).sqrt())
}

/// Weighted sample of `P_inf(u, v)` on `[0, 1]`: Brownian motions with drifts
/// `-v`, `v` reweighted by `e^{(u+v) min (B_1 - B_2)}`. The minimum is taken
/// over the continuous path by sampling the bridge minimum on each grid interval.
pub fn sample_universal_limit(
    u: f64,
    v: f64,
    grid_m: usize,
    n: usize,
    points: &[f64],
    stream: RngStream,
) -> Result<MarginalSample> {
    if grid_m == 0 || n == 0 || !u.is_finite() || !v.is_finite() {
        return Err(Error::ParamDomain(
            "the universal limit needs M >= 1, n >= 1 and finite parameters".into(),
        ));
    }
    let dx = 1.0 / grid_m as f64;
    let chunks = n.div_ceil(CHUNK);
    let rows: Vec<(Vec<f64>, f64)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream.substream(c as u64).rng();
            let len = CHUNK.min(n - c * CHUNK);
            let mut b1 = vec![0.0; grid_m + 1];
            let mut b2 = vec![0.0; grid_m + 1];
            (0..len)
                .map(|_| {
                    draw_pair(&mut rng, v, dx, &mut b1, &mut b2);
                    let mut lw = 0.0;
                    if u + v != 0.0 {
                        let mut lo = 0.0f64;
                        for k in 1..=grid_m {
                            let m =
                                bridge_min(&mut rng, b1[k - 1] - b2[k - 1], b1[k] - b2[k], dx, 2.0);
                            lo = lo.min(m);
                        }
                        lw = (u + v) * lo;
                    }
                    (
                        points.iter().map(|&x| interpolate(&b1, x / dx)).collect(),
                        lw,
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(MarginalSample {
        points: points.to_vec(),
        values: (0..points.len())
            .map(|p| rows.iter().map(|r| r.0[p]).collect())
            .collect(),
        log_weights: rows.iter().map(|r| r.1).collect(),
    })
}

/// Diffusive scaling `B(x) = (sqrt(eps) / sigma) (L(x / eps) - m x / eps)` on
/// `[0, 1]` with microscopic boundary parameters chosen so that the drifts of
/// the limit are `-v~`, `v~`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniversalScaling {
    /// Lattice spacing.
    pub epsilon: f64,
    /// Strip width `1 / eps`.
    pub n_steps: usize,
    /// Mean increment `m` of the bulk walk.
    pub mean: f64,
    /// Standard deviation `sigma` of the bulk increment.
    pub sigma: f64,
    /// Microscopic model parameters.
    pub params: ModelParams,
}

fn width(epsilon: f64) -> Result<usize> {
    let r = 1.0 / epsilon;
    if !(epsilon > 0.0) || r.round() < 1.0 || (r - r.round()).abs() > 1e-9 * r {
        return Err(Error::ParamDomain(format!(
            "1 / eps = {r} is not a positive integer"
        )));
    }
    Ok(r.round() as usize)
}

impl UniversalScaling {
    /// Geometric model with bulk `a` and boundary `c_i = exp(-u~ sqrt(eps) / sigma)`, `exp(-v~ sqrt(eps) / sigma)`.
    pub fn geometric(epsilon: f64, a: f64, ut: f64, vt: f64) -> Result<Self> {
        let n_steps = width(epsilon)?;
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::ParamDomain(format!(
                "geometric bulk parameter {a} outside (0, 1)"
            )));
        }
        let mean = a / (1.0 - a);
        let sigma = a.sqrt() / (1.0 - a);
        let h = epsilon.sqrt() / sigma;
        let params = ModelParams::homogeneous(
            ModelKind::GeometricLpp,
            n_steps,
            a,
            (-ut * h).exp(),
            (-vt * h).exp(),
        )?;
        Ok(Self {
            epsilon,
            n_steps,
            mean,
            sigma,
            params,
        })
    }

    /// Log-gamma model with bulk `alpha` and boundary `u~ sqrt(eps) / sigma`, `v~ sqrt(eps) / sigma`.
    pub fn log_gamma(epsilon: f64, alpha: f64, ut: f64, vt: f64) -> Result<Self> {
        let n_steps = width(epsilon)?;
        let mean = -checked_digamma(alpha)?;
        let sigma = checked_trigamma(alpha)?.sqrt();
        let h = epsilon.sqrt() / sigma;
        let params = ModelParams::homogeneous(ModelKind::LogGamma, n_steps, alpha, ut * h, vt * h)?;
        Ok(Self {
            epsilon,
            n_steps,
            mean,
            sigma,
            params,
        })
    }

    /// Rescaled first walk of `walks` at `x` in `[0, 1]`.
    pub fn b1_at<T: ToF64>(&self, walks: &WalkPair<T>, x: f64) -> f64 {
        let row: Vec<f64> = (0..=walks.n())
            .map(|j| walks.l1_at(j).to_f64() - self.mean * j as f64)
            .collect();
        self.epsilon.sqrt() / self.sigma * interpolate(&row, x / self.epsilon)
    }

    fn marginals<T: ToF64>(&self, run: &IsRun<T>, points: &[f64]) -> MarginalSample {
        MarginalSample {
            points: points.to_vec(),
            values: points
                .iter()
                .map(|&x| {
                    run.samples
                        .iter()
                        .map(|s| self.b1_at(&s.walks, x))
                        .collect()
                })
                .collect(),
            log_weights: run.log_weights(),
        }
    }
}

/// Rescaled geometric stationary first walk at `points`.
pub fn sample_universal_geometric(
    scaling: &UniversalScaling,
    n: usize,
    points: &[f64],
    stream: RngStream,
) -> Result<MarginalSample> {
    let p = &scaling.params;
    let run = sample_stationary_is_lpp(p, &p.bulk, IsConfig::new(n, 1.0), stream)?;
    Ok(scaling.marginals(&run, points))
}

/// Rescaled log-gamma stationary first walk at `points`.
pub fn sample_universal_lg(
    scaling: &UniversalScaling,
    n: usize,
    points: &[f64],
    stream: RngStream,
) -> Result<MarginalSample> {
    let p = &scaling.params;
    let run = sample_stationary_is_lg(p, &p.bulk, IsConfig::new(n, 1.0), stream)?;
    Ok(scaling.marginals(&run, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn bridge_minimum_matches_reflection_law() {
        // P(min < y) = exp(-2 (a - y)(b - y) / (rate dt)) for y < min(a, b)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let (a, b, dt, rate, y) = (0.2, -0.1, 0.5, 2.0, -0.6);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| bridge_min(&mut rng, a, b, dt, rate) < y)
            .count() as f64
            / n as f64;
        let exact = (-2.0f64 * (a - y) * (b - y) / (rate * dt)).exp();
        assert!((hits - exact).abs() < 0.005, "{hits} {exact}");
    }

    #[test]
    fn zero_total_boundary_is_plain_brownian_motion() {
        let s =
            sample_universal_limit(0.5, -0.5, 64, 20_000, &[1.0], RngStream::new(4, 0)).unwrap();
        assert!(s.log_weights.iter().all(|&w| w == 0.0));
        let e = s.ecdf(0).unwrap();
        let nd = Normal::new(0.5, 1.0).unwrap();
        let ks = [-1.0, 0.0, 0.5, 1.0, 2.0]
            .iter()
            .map(|&x| (e.cdf(x) - nd.cdf(x)).abs())
            .fold(0.0, f64::max);
        assert!(ks < 0.02, "{ks}");
    }

    #[test]
    fn weights_never_exceed_one_in_the_fan() {
        let s = sample_universal_limit(1.0, 0.5, 32, 2000, &[0.5], RngStream::new(5, 0)).unwrap();
        assert!(s.log_weights.iter().all(|&w| w <= 0.0));
    }

    #[test]
    fn microscopic_parameters_follow_the_scaling() {
        let g = UniversalScaling::geometric(0.05, 0.9, 1.0, 1.0).unwrap();
        assert_eq!(g.n_steps, 20);
        assert!((g.mean - 9.0).abs() < 1e-12 && (g.sigma - 90f64.sqrt()).abs() < 1e-12);
        assert!((g.params.left - (-(0.05f64).sqrt() / 90f64.sqrt()).exp()).abs() < 1e-15);
        let l = UniversalScaling::log_gamma(0.05, 20.0, 1.0, 2.0).unwrap();
        assert!((l.params.right - 2.0 * l.params.left).abs() < 1e-15);
        assert!(UniversalScaling::geometric(0.3, 0.9, 1.0, 1.0).is_err());
        assert!(UniversalScaling::log_gamma(0.05, -1.0, 1.0, 1.0).is_err());
    }
}
