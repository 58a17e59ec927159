//! The conditional law of the second-layer value in log-gamma kernels.
//!
//! Every log-gamma push-block kernel draws `pi_2` from a density
//! proportional to `exp(g(y))` with
//! `g(y) = c y - e^{y - p} - e^{q - y}`,
//! which is strictly concave with double-exponential tails. The mode solves
//! `c = e^{y-p} - e^{q-y}` in closed form:
//! `y* = (p + q)/2 + asinh((c/2) e^{(p - q)/2})`.
//!
//! Sampling uses a piecewise log-linear envelope of `g` on a grid of 4096
//! nodes spanning the region where `g` is within 40 of its maximum, inverted
//! exactly segment by segment.

use rand::Rng;
use serde::{Deserialize, Serialize};

use stripgibbs_core::quad::integrate_line_rel;
use stripgibbs_core::Result;

/// Number of grid nodes of the sampler.
pub const GRID_NODES: usize = 4096;
/// Drop of `g` below its maximum at the ends of the sampling window.
pub const WINDOW_DROP: f64 = 40.0;

/// The log-concave density `exp(c y - e^{y-p} - e^{q-y})`, unnormalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pi2Density {
    /// Linear coefficient.
    pub c: f64,
    /// Location of the upper double-exponential wall.
    pub p: f64,
    /// Location of the lower double-exponential wall.
    pub q: f64,
}

impl Pi2Density {
    /// `g(y)`.
    pub fn log_density(&self, y: f64) -> f64 {
        self.c * y - (y - self.p).exp() - (self.q - y).exp()
    }

    /// The maximizer of `g`.
    pub fn mode(&self) -> f64 {
        let mid = 0.5 * (self.p + self.q);
        if self.c == 0.0 {
            return mid;
        }
        let half_gap = 0.5 * (self.p - self.q);
        let z_log = (0.5 * self.c.abs()).ln() + half_gap;
        let t = if z_log < 300.0 {
            (0.5 * self.c.abs() * half_gap.exp()).asinh()
        } else {
            z_log + std::f64::consts::LN_2
        };
        mid + self.c.signum() * t
    }

    /// `[lo, hi]` outside which `g` is more than `drop` below its maximum.
    pub fn window(&self, drop: f64) -> (f64, f64) {
        let m = self.mode();
        let target = self.log_density(m) - drop;
        let edge = |dir: f64| {
            let mut inside = m;
            let mut d = 1.0;
            let mut outside = m + dir * d;
            while self.log_density(outside) > target {
                inside = outside;
                d *= 2.0;
                outside = m + dir * d;
            }
            for _ in 0..80 {
                let mid = 0.5 * (inside + outside);
                if self.log_density(mid) > target {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            outside
        };
        (edge(-1.0), edge(1.0))
    }

    /// `ln int exp(g)` by adaptive quadrature.
    pub fn log_normalizer(&self) -> Result<f64> {
        let m = self.mode();
        let gm = self.log_density(m);
        let (i, _) = integrate_line_rel(|y| (self.log_density(y) - gm).exp(), m, 1e-12)?;
        Ok(gm + i.ln())
    }

    /// Grid sampler for this density.
    pub fn sampler(&self) -> Pi2Sampler {
        Pi2Sampler::new(self)
    }
}

/// Inverse-CDF sampler from a piecewise log-linear envelope.
#[derive(Debug, Clone)]
pub struct Pi2Sampler {
    nodes: Vec<f64>,
    logs: Vec<f64>,
    cum: Vec<f64>,
}

impl Pi2Sampler {
    /// Builds the grid on the window of `density`.
    pub fn new(density: &Pi2Density) -> Self {
        let (lo, hi) = density.window(WINDOW_DROP);
        let gm = density.log_density(density.mode());
        let h = (hi - lo) / (GRID_NODES - 1) as f64;
        let nodes: Vec<f64> = (0..GRID_NODES).map(|i| lo + h * i as f64).collect();
        let logs: Vec<f64> = nodes.iter().map(|&x| density.log_density(x) - gm).collect();
        let mut cum = Vec::with_capacity(GRID_NODES);
        cum.push(0.0);
        for i in 0..GRID_NODES - 1 {
            let mass = segment_mass(logs[i], logs[i + 1], h);
            cum.push(cum[i] + mass);
        }
        Self { nodes, logs, cum }
    }

    /// Draws one value.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let total = *self.cum.last().expect("grid is nonempty");
        let target = rng.random::<f64>() * total;
        let i = match self.cum.partition_point(|&c| c <= target) {
            0 => 0,
            k => (k - 1).min(self.nodes.len() - 2),
        };
        let h = self.nodes[i + 1] - self.nodes[i];
        let (l0, l1) = (self.logs[i], self.logs[i + 1]);
        let s = (l1 - l0) / h;
        let frac = ((target - self.cum[i]) / (self.cum[i + 1] - self.cum[i])).clamp(0.0, 1.0);
        let t = if (s * h).abs() < 1e-12 {
            frac * h
        } else {
            (frac * (s * h).exp_m1()).ln_1p() / s
        };
        self.nodes[i] + t.clamp(0.0, h)
    }
}

fn segment_mass(l0: f64, l1: f64, h: f64) -> f64 {
    let d = l1 - l0;
    if d.abs() < 1e-12 {
        h * (0.5 * (l0 + l1)).exp()
    } else {
        // h (e^{l1} - e^{l0}) / (l1 - l0), written to avoid cancellation
        h * l0.exp() * d.exp_m1() / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mode_is_stationary_point() {
        for &(c, p, q) in &[
            (0.0, 0.0, 0.0),
            (-2.1, 1.0, -3.0),
            (1.5, -4.0, 6.0),
            (-0.3, 20.0, -20.0),
        ] {
            let d = Pi2Density { c, p, q };
            let y = d.mode();
            let grad = c - (y - p).exp() + (q - y).exp();
            let scale = c.abs() + (y - p).exp() + (q - y).exp();
            assert!(grad.abs() < 1e-12 * scale, "({c},{p},{q}): {grad}");
        }
    }

    #[test]
    fn normalizer_matches_log_inverse_gamma() {
        // with no upper wall, exp(c y - e^{q-y}) integrates to Gamma(-c) e^{c q}
        let d = Pi2Density {
            c: -1.7,
            p: 200.0,
            q: 0.4,
        };
        let expect = stripgibbs_core::special::ln_gamma(1.7) - 1.7 * 0.4;
        assert!((d.log_normalizer().unwrap() - expect).abs() < 1e-10);
    }

    #[test]
    fn sampler_mean_and_cdf() {
        let d = Pi2Density {
            c: 0.5,
            p: 1.0,
            q: -1.0,
        };
        let s = d.sampler();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
        let lz = d.log_normalizer().unwrap();
        let m = d.mode();
        let (mean, _) = integrate_line_rel(
            |y| y * (d.log_density(y) - lz).exp() + 100.0 * (d.log_density(y) - lz).exp(),
            m,
            1e-12,
        )
        .unwrap();
        let mean = mean - 100.0;
        let emp = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - emp).powi(2)).sum::<f64>() / n as f64;
        assert!(
            (emp - mean).abs() < 5.0 * (var / n as f64).sqrt(),
            "{emp} vs {mean}"
        );
    }
}
