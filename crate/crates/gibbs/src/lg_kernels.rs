//! Log-gamma push-block kernels.
//!
//! * bulk, with neighbours `lambda` (parameter `alpha`) and `mu` (parameter
//!   `beta`): `e^{pi_1} = w (e^{lambda_1} + e^{mu_1})` with
//!   `w ~ Gamma^{-1}(alpha + beta)`, and independently `pi_2` with density
//!   proportional to `exp(-(alpha+beta) y - e^{y}(e^{-lambda_1} + e^{-mu_1}) - e^{-y}(e^{lambda_2} + e^{mu_2}))`;
//! * boundary, with neighbour `kappa`, parameter `alpha` and boundary
//!   parameter `u`: `e^{pi_1} = w e^{kappa_1}` with `w ~ Gamma^{-1}(alpha + u)`,
//!   and `pi_2` with density proportional to
//!   `exp((u - alpha) y - e^{y - kappa_1} - e^{kappa_2 - y})`.

use rand::Rng;

use stripgibbs_core::{log_inv_gamma_logpdf, logaddexp, Error, LogInvGammaSampler, Result};

use crate::identities::{
    cauchy_lg_lhs_log, cauchy_lg_rhs_log, integrate_2d, littlewood_lg_lhs_log,
    littlewood_lg_rhs_log,
};
use crate::pi2::{Pi2Density, Pi2Sampler};
use crate::signature::Signature2;

type Sig = Signature2<f64>;

/// A log-gamma push-block law: `pi_1 = shift + log w` with
/// `w ~ Gamma^{-1}(theta)`, and `pi_2` from a [`Pi2Density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgKernel {
    /// Additive shift of the first-layer value.
    pub shift: f64,
    /// Inverse-gamma shape of the first-layer multiplier.
    pub theta: f64,
    /// Conditional density of the second-layer value.
    pub pi2: Pi2Density,
}

impl LgKernel {
    /// Draws `pi_1`, using exactly one log-inverse-gamma draw of shape `theta`.
    pub fn sample_pi1<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let s =
            LogInvGammaSampler::new(self.theta).expect("kernel parameter checked at construction");
        self.shift + s.sample(rng)
    }

    /// Grid sampler for `pi_2`, reusable across draws.
    pub fn pi2_sampler(&self) -> Pi2Sampler {
        self.pi2.sampler()
    }

    /// Draws `(pi_1, pi_2)` with `pi_1` from `rng1` and `pi_2` from `rng2`.
    pub fn sample<R1: Rng + ?Sized, R2: Rng + ?Sized>(&self, rng1: &mut R1, rng2: &mut R2) -> Sig {
        let l1 = self.sample_pi1(rng1);
        Sig {
            l1,
            l2: self.pi2_sampler().sample(rng2),
        }
    }

    /// Log density of `pi`.
    pub fn log_pdf(&self, pi: Sig) -> Result<f64> {
        Ok(
            log_inv_gamma_logpdf(self.theta, pi.l1 - self.shift) + self.pi2.log_density(pi.l2)
                - self.pi2.log_normalizer()?,
        )
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::ParamDomain(format!("{name} = {x} must be > 0")));
    }
    Ok(())
}

/// Bulk kernel given `lambda` (parameter `alpha`) and `mu` (parameter `beta`).
pub fn kernel_bulk_lg(lam: Sig, mu: Sig, alpha: f64, beta: f64) -> Result<LgKernel> {
    positive("alpha + beta", alpha + beta)?;
    Ok(LgKernel {
        shift: logaddexp(lam.l1, mu.l1),
        theta: alpha + beta,
        pi2: Pi2Density {
            c: -(alpha + beta),
            p: -logaddexp(-lam.l1, -mu.l1),
            q: logaddexp(lam.l2, mu.l2),
        },
    })
}

fn kernel_boundary_lg(kappa: Sig, alpha: f64, u: f64, name: &str) -> Result<LgKernel> {
    positive(name, alpha + u)?;
    Ok(LgKernel {
        shift: kappa.l1,
        theta: alpha + u,
        pi2: Pi2Density {
            c: u - alpha,
            p: kappa.l1,
            q: kappa.l2,
        },
    })
}

/// Left boundary kernel given `kappa = lambda^(1)`.
pub fn kernel_left_lg(kappa: Sig, u: f64, alpha: f64) -> Result<LgKernel> {
    kernel_boundary_lg(kappa, alpha, u, "alpha + u")
}

/// Right boundary kernel given `kappa = lambda^(N-1)`.
pub fn kernel_right_lg(kappa: Sig, alpha: f64, v: f64) -> Result<LgKernel> {
    kernel_boundary_lg(kappa, alpha, v, "alpha + v")
}

/// Relative residual `|U(pi) int w_before - w_after(pi)| / w_after(pi)` of
/// the bulk move, with the integral over the replaced value by quadrature.
pub fn bulk_weight_residual_lg(pi: Sig, lam: Sig, mu: Sig, alpha: f64, beta: f64) -> Result<f64> {
    let k = kernel_bulk_lg(lam, mu, alpha, beta)?;
    let before = integrate_2d(
        |k1, k2| cauchy_lg_lhs_log(lam, mu, alpha, beta, Sig { l1: k1, l2: k2 }),
        lam.l1.min(mu.l1),
        lam.l2.min(mu.l2),
        1e-10,
    )?;
    let lhs = k.log_pdf(pi)? + before.ln();
    let rhs = cauchy_lg_rhs_log(lam, mu, alpha, beta, pi);
    Ok((lhs - rhs).exp_m1().abs())
}

/// Relative residual of a boundary move, as in [`bulk_weight_residual_lg`].
pub fn boundary_weight_residual_lg(pi: Sig, kappa: Sig, alpha: f64, u: f64) -> Result<f64> {
    let k = kernel_boundary_lg(kappa, alpha, u, "alpha + u")?;
    let before = integrate_2d(
        |l1, l2| littlewood_lg_lhs_log(kappa, u, alpha, Sig { l1, l2 }),
        kappa.l1,
        kappa.l2,
        1e-10,
    )?;
    let lhs = k.log_pdf(pi)? + before.ln();
    let rhs = littlewood_lg_rhs_log(kappa, u, alpha, pi);
    Ok((lhs - rhs).exp_m1().abs())
}

/// `int int pdf(pi) d pi` of a kernel, by nested quadrature.
pub fn kernel_total_mass_lg(k: &LgKernel) -> Result<f64> {
    let lz = k.pi2.log_normalizer()?;
    let m2 = k.pi2.mode();
    integrate_2d(
        |p1, p2| log_inv_gamma_logpdf(k.theta, p1 - k.shift) + k.pi2.log_density(p2) - lz,
        k.shift,
        m2,
        1e-9,
    )
}
