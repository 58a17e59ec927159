//! Geometric and log-inverse-gamma distributions.
//!
//! `Geom(a)` has pmf `(1 - a) a^k` on `k >= 0`. The log-inverse-gamma law
//! with parameter `theta > 0` has density `exp(-theta y - e^{-y}) / Gamma(theta)`;
//! a variate is `-log G` with `G ~ Gamma(theta, 1)`.

use num_traits::{Num, Zero};
use rand::Rng;
use rand_distr::{Distribution, Gamma, Geometric};

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// `P(X = k) = (1 - a) a^k`, generic over floating point and exact rationals.
pub fn geom_pmf<T: Num + Clone>(a: &T, k: u64) -> T {
    let one = T::one();
    (one - a.clone()) * num_traits::pow(a.clone(), k as usize)
}

/// Reusable sampler for `Geom(a)`.
#[derive(Debug, Clone, Copy)]
pub struct GeomSampler {
    inner: Option<Geometric>,
}

impl GeomSampler {
    /// Sampler for `Geom(a)`, `0 <= a < 1`. `a = 0` gives the point mass at 0.
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::ParamDomain(format!(
                "geometric parameter {a} must lie in [0, 1)"
            )));
        }
        if a.is_zero() {
            return Ok(Self { inner: None });
        }
        let g = Geometric::new(1.0 - a).map_err(|e| Error::ParamDomain(e.to_string()))?;
        Ok(Self { inner: Some(g) })
    }

    /// One draw.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.inner {
            Some(g) => g.sample(rng),
            None => 0,
        }
    }
}

/// One draw of `Geom(a)`, `0 < a < 1`.
pub fn sample_geom<R: Rng + ?Sized>(a: f64, rng: &mut R) -> Result<u64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::ParamDomain(format!(
            "geometric parameter {a} must lie in (0, 1)"
        )));
    }
    Ok(GeomSampler::new(a)?.sample(rng))
}

/// Reusable sampler for the log-inverse-gamma law with parameter `theta`.
///
/// For `theta < 1` the gamma variate is drawn as `G(theta + 1) U^{1/theta}`
/// and the logarithm is taken termwise, so tiny variates do not underflow.
#[derive(Debug, Clone, Copy)]
pub struct LogInvGammaSampler {
    gamma: Gamma<f64>,
    theta: f64,
    boosted: bool,
}

impl LogInvGammaSampler {
    /// Sampler for parameter `theta > 0`.
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::ParamDomain(format!(
                "log-inverse-gamma parameter {theta} must be > 0"
            )));
        }
        let boosted = theta < 1.0;
        let shape = if boosted { theta + 1.0 } else { theta };
        let gamma = Gamma::new(shape, 1.0).map_err(|e| Error::ParamDomain(e.to_string()))?;
        Ok(Self {
            gamma,
            theta,
            boosted,
        })
    }

    /// The parameter `theta`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// One draw of `-log Gamma(theta, 1)`.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g: f64 = self.gamma.sample(rng);
        if self.boosted {
            let u: f64 = 1.0 - rng.random::<f64>();
            -(g.ln() + u.ln() / self.theta)
        } else {
            -g.ln()
        }
    }
}

/// One draw of the log-inverse-gamma law with parameter `theta > 0`.
pub fn sample_log_inv_gamma<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> Result<f64> {
    Ok(LogInvGammaSampler::new(theta)?.sample(rng))
}

/// Normalized log-density `-theta y - e^{-y} - ln Gamma(theta)`.
pub fn log_inv_gamma_logpdf(theta: f64, y: f64) -> f64 {
    crate::logspace::log_gamma_weight(theta, y) - ln_gamma(theta)
}

/// CDF of the log-inverse-gamma law: `P(Y <= y) = Q(theta, e^{-y})`, the
/// regularized upper incomplete gamma function.
pub fn log_inv_gamma_cdf(theta: f64, y: f64) -> f64 {
    statrs::function::gamma::gamma_ur(theta, (-y).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::special::digamma;
    use num_rational::BigRational;

    #[test]
    fn pmf_values() {
        assert_eq!(geom_pmf(&0.5, 0), 0.5);
        assert_eq!(geom_pmf(&0.5, 3), 0.0625);
    }

    #[test]
    fn rational_partial_sums_are_exact() {
        let a = BigRational::new(3.into(), 7.into());
        let k = 20u64;
        let s = (0..=k).fold(BigRational::zero(), |acc, j| acc + geom_pmf(&a, j));
        let expect =
            BigRational::from_integer(1.into()) - num_traits::pow(a.clone(), (k + 1) as usize);
        assert_eq!(s, expect);
    }

    #[test]
    fn geometric_mean_within_clt_band() {
        let mut rng = RngStream::new(11, 0).rng();
        let g = GeomSampler::new(0.5).unwrap();
        let n = 1_000_000;
        let mean = (0..n).map(|_| g.sample(&mut rng) as f64).sum::<f64>() / n as f64;
        let sigma = 2f64.sqrt();
        assert!(
            (mean - 1.0).abs() < 3.0 * sigma / (n as f64).sqrt(),
            "mean {mean}"
        );
    }

    #[test]
    fn exponential_moment_theta_one() {
        let mut rng = RngStream::new(12, 0).rng();
        let s = LogInvGammaSampler::new(1.0).unwrap();
        let n = 1_000_000;
        let mean = (0..n).map(|_| (-s.sample(&mut rng)).exp()).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn mean_matches_minus_digamma() {
        let mut rng = RngStream::new(13, 0).rng();
        let s = LogInvGammaSampler::new(2.0).unwrap();
        let n = 1_000_000;
        let xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = crate::special::trigamma(2.0);
        assert!(
            (mean + digamma(2.0)).abs() < 3.0 * (var / n as f64).sqrt(),
            "mean {mean}"
        );
    }

    #[test]
    fn small_theta_mean_matches_minus_digamma() {
        let mut rng = RngStream::new(14, 0).rng();
        let s = LogInvGammaSampler::new(0.3).unwrap();
        let n = 400_000;
        let mean = (0..n).map(|_| s.sample(&mut rng)).sum::<f64>() / n as f64;
        let sd = crate::special::trigamma(0.3).sqrt();
        assert!(
            (mean + digamma(0.3)).abs() < 3.0 * sd / (n as f64).sqrt(),
            "mean {mean}"
        );
    }

    #[test]
    fn density_integrates_to_one() {
        for theta in [0.5, 1.0, 3.0] {
            let (val, _) =
                crate::quad::integrate_line(|y| log_inv_gamma_logpdf(theta, y).exp(), 0.0, 1e-13)
                    .unwrap();
            assert!((val - 1.0).abs() < 1e-10, "theta {theta}: {val}");
        }
    }

    #[test]
    fn domain_errors() {
        let mut rng = RngStream::new(0, 0).rng();
        assert!(sample_geom(1.0, &mut rng).is_err());
        assert!(sample_geom(0.0, &mut rng).is_err());
        assert!(sample_log_inv_gamma(0.0, &mut rng).is_err());
        assert!(sample_log_inv_gamma(-1.0, &mut rng).is_err());
    }

    #[test]
    fn cdf_matches_quadrature() {
        let theta = 1.7;
        let y = 0.3;
        let (q, _) = crate::quad::integrate_adaptive(
            |t| log_inv_gamma_logpdf(theta, t).exp(),
            -10.0,
            y,
            1e-13,
        )
        .unwrap();
        assert!((q - log_inv_gamma_cdf(theta, y)).abs() < 1e-10);
    }
}
