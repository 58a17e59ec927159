//! Skew Cauchy and skew Littlewood identities for length-two signatures.
//!
//! Geometric model, with `lambda, mu, kappa, pi` in `Sign_2`:
//!
//! * Cauchy: `sum_{kappa <= lambda, mu} a^{|lambda|-|kappa|} b^{|mu|-|kappa|}
//!   = sum_{pi >= lambda, mu} b^{|pi|-|lambda|} a^{|pi|-|mu|}` for `|ab| < 1`.
//! * Littlewood: `sum_{lambda <= kappa} a^{|kappa|-|lambda|} c^{lambda_1-lambda_2}
//!   = sum_{pi >= kappa} a^{|pi|-|kappa|} c^{pi_1-pi_2}` for `|ac| < 1`.
//!
//! Both sides are evaluated in closed form: the unbounded coordinate is a
//! geometric series and the bounded one a finite sum. The log-gamma versions
//! replace sums by integrals over `R^2` and are checked by quadrature.

use num_traits::{Num, One, Signed};
use serde::{Deserialize, Serialize};

use stripgibbs_core::quad::integrate_line_rel;
use stripgibbs_core::{log_gamma_weight, logaddexp, Error, Rational, Result};

use crate::signature::Signature2;

type Sig = Signature2<i64>;

fn pw<T: Num + Clone>(x: &T, k: i64) -> T {
    debug_assert!(k >= 0);
    num_traits::pow(x.clone(), k as usize)
}

/// Closed forms `(lhs, rhs)` of the geometric skew Cauchy identity.
pub fn cauchy_geometric<T: Num + Clone>(lam: Sig, mu: Sig, a: &T, b: &T) -> (T, T) {
    let lo = lam.l2.max(mu.l2);
    let hi = lam.l1.min(mu.l1);
    let m1 = lam.l1.max(mu.l1);
    let m2 = lam.l2.min(mu.l2);
    let q = a.clone() * b.clone();
    let geo = T::one() / (T::one() - q);
    let mut lsum = T::zero();
    let mut rsum = T::zero();
    for k in lo..=hi {
        lsum = lsum + pw(a, lam.l1 - k) * pw(b, mu.l1 - k);
        rsum = rsum + pw(b, k - lam.l2) * pw(a, k - mu.l2);
    }
    let lhs = pw(a, lam.l2 - m2) * pw(b, mu.l2 - m2) * geo.clone() * lsum;
    let rhs = pw(b, m1 - lam.l1) * pw(a, m1 - mu.l1) * geo * rsum;
    (lhs, rhs)
}

/// Closed forms `(lhs, rhs)` of the geometric skew Littlewood identity.
pub fn littlewood_geometric<T: Num + Clone>(kappa: Sig, a: &T, c: &T) -> (T, T) {
    let geo = T::one() / (T::one() - a.clone() * c.clone());
    let mut lsum = T::zero();
    let mut rsum = T::zero();
    for k in kappa.l2..=kappa.l1 {
        lsum = lsum + pw(c, k - kappa.l2) * pw(a, kappa.l1 - k);
        rsum = rsum + pw(c, kappa.l1 - k) * pw(a, k - kappa.l2);
    }
    (geo.clone() * lsum, geo * rsum)
}

fn check_sig(s: Sig, name: &str) -> Result<()> {
    if s.l1 < s.l2 {
        return Err(Error::ParamDomain(format!(
            "{name} = ({}, {}) is not a signature",
            s.l1, s.l2
        )));
    }
    Ok(())
}

/// Exact check of the Cauchy identity at rational `a, b` with `|ab| < 1`.
pub fn check_cauchy_geometric(
    lam: Sig,
    mu: Sig,
    a: &Rational,
    b: &Rational,
) -> Result<(Rational, Rational)> {
    check_sig(lam, "lambda")?;
    check_sig(mu, "mu")?;
    if (a * b).abs() >= Rational::one() {
        return Err(Error::ParamDomain("|ab| must be < 1".into()));
    }
    Ok(cauchy_geometric(lam, mu, a, b))
}

/// Exact check of the Littlewood identity at rational `a, c` with `|ac| < 1`.
pub fn check_littlewood_geometric(
    kappa: Sig,
    a: &Rational,
    c: &Rational,
) -> Result<(Rational, Rational)> {
    check_sig(kappa, "kappa")?;
    if (a * c).abs() >= Rational::one() {
        return Err(Error::ParamDomain("|ac| must be < 1".into()));
    }
    Ok(littlewood_geometric(kappa, a, c))
}

/// Term-level bijection of the Cauchy identity: `kappa` maps to
/// `pi_1 = -kappa_2 + max(lambda_1, mu_1) + min(lambda_2, mu_2)`,
/// `pi_2 = -kappa_1 + max(lambda_2, mu_2) + min(lambda_1, mu_1)`.
pub fn cauchy_bijection(lam: Sig, mu: Sig, kappa: Sig) -> Sig {
    let m1 = lam.l1.max(mu.l1);
    let m2 = lam.l2.min(mu.l2);
    let lo = lam.l2.max(mu.l2);
    let hi = lam.l1.min(mu.l1);
    Sig::new(-kappa.l2 + m1 + m2, -kappa.l1 + lo + hi)
}

/// Term-level bijection of the Littlewood identity:
/// `pi_1 = -lambda_2 + kappa_1 + kappa_2`, `pi_2 = -lambda_1 + kappa_1 + kappa_2`.
pub fn littlewood_bijection(kappa: Sig, lam: Sig) -> Sig {
    let s = kappa.l1 + kappa.l2;
    Sig::new(s - lam.l2, s - lam.l1)
}

/// Summand of the Cauchy left side, zero unless `kappa` lies below both.
pub fn cauchy_lhs_term<T: Num + Clone>(lam: Sig, mu: Sig, kappa: Sig, a: &T, b: &T) -> T {
    if !(lam.covers(&kappa) && mu.covers(&kappa)) {
        return T::zero();
    }
    pw(a, lam.size() - kappa.size()) * pw(b, mu.size() - kappa.size())
}

/// Summand of the Cauchy right side, zero unless `pi` lies above both.
pub fn cauchy_rhs_term<T: Num + Clone>(lam: Sig, mu: Sig, pi: Sig, a: &T, b: &T) -> T {
    if !(pi.covers(&lam) && pi.covers(&mu)) {
        return T::zero();
    }
    pw(b, pi.size() - lam.size()) * pw(a, pi.size() - mu.size())
}

/// Summand of the Littlewood left side.
pub fn littlewood_lhs_term<T: Num + Clone>(kappa: Sig, lam: Sig, a: &T, c: &T) -> T {
    if !kappa.covers(&lam) {
        return T::zero();
    }
    pw(a, kappa.size() - lam.size()) * pw(c, lam.l1 - lam.l2)
}

/// Summand of the Littlewood right side.
pub fn littlewood_rhs_term<T: Num + Clone>(kappa: Sig, pi: Sig, a: &T, c: &T) -> T {
    if !pi.covers(&kappa) {
        return T::zero();
    }
    pw(a, pi.size() - kappa.size()) * pw(c, pi.l1 - pi.l2)
}

/// Outcome of a quadrature identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// Left side.
    pub lhs: f64,
    /// Right side.
    pub rhs: f64,
    /// `|lhs - rhs| / |rhs|`.
    pub rel_err: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            rel_err: (lhs - rhs).abs() / rhs.abs(),
        }
    }
}

/// Log of the Cauchy left-side integrand at `kappa`.
pub fn cauchy_lg_lhs_log(
    lam: Signature2<f64>,
    mu: Signature2<f64>,
    alpha: f64,
    beta: f64,
    kappa: Signature2<f64>,
) -> f64 {
    log_gamma_weight(alpha, lam.l1 - kappa.l1) + log_gamma_weight(alpha, lam.l2 - kappa.l2)
        - (-(kappa.l1 - lam.l2)).exp()
        + log_gamma_weight(beta, mu.l1 - kappa.l1)
        + log_gamma_weight(beta, mu.l2 - kappa.l2)
        - (-(kappa.l1 - mu.l2)).exp()
}

/// Log of the Cauchy right-side integrand at `pi`.
pub fn cauchy_lg_rhs_log(
    lam: Signature2<f64>,
    mu: Signature2<f64>,
    alpha: f64,
    beta: f64,
    pi: Signature2<f64>,
) -> f64 {
    log_gamma_weight(beta, pi.l1 - lam.l1) + log_gamma_weight(beta, pi.l2 - lam.l2)
        - (-(lam.l1 - pi.l2)).exp()
        + log_gamma_weight(alpha, pi.l1 - mu.l1)
        + log_gamma_weight(alpha, pi.l2 - mu.l2)
        - (-(mu.l1 - pi.l2)).exp()
}

/// The measure-preserving substitution `kappa -> pi` of the log-gamma Cauchy identity:
/// `pi_1 = -kappa_2 + log(e^{lambda_1} + e^{mu_1}) - log(e^{-lambda_2} + e^{-mu_2})`,
/// `pi_2 = -kappa_1 + log(e^{lambda_2} + e^{mu_2}) - log(e^{-lambda_1} + e^{-mu_1})`.
pub fn cauchy_lg_substitution(
    lam: Signature2<f64>,
    mu: Signature2<f64>,
    kappa: Signature2<f64>,
) -> Signature2<f64> {
    let s1 = logaddexp(lam.l1, mu.l1) - logaddexp(-lam.l2, -mu.l2);
    let s2 = logaddexp(lam.l2, mu.l2) - logaddexp(-lam.l1, -mu.l1);
    Signature2 {
        l1: -kappa.l2 + s1,
        l2: -kappa.l1 + s2,
    }
}

/// Log of the Littlewood left-side integrand at `lambda`.
pub fn littlewood_lg_lhs_log(
    kappa: Signature2<f64>,
    u: f64,
    alpha: f64,
    lam: Signature2<f64>,
) -> f64 {
    -u * (lam.l1 - lam.l2)
        + log_gamma_weight(alpha, kappa.l1 - lam.l1)
        + log_gamma_weight(alpha, kappa.l2 - lam.l2)
        - (-(lam.l1 - kappa.l2)).exp()
}

/// Log of the Littlewood right-side integrand at `pi`.
pub fn littlewood_lg_rhs_log(
    kappa: Signature2<f64>,
    u: f64,
    alpha: f64,
    pi: Signature2<f64>,
) -> f64 {
    -u * (pi.l1 - pi.l2)
        + log_gamma_weight(alpha, pi.l1 - kappa.l1)
        + log_gamma_weight(alpha, pi.l2 - kappa.l2)
        - (-(kappa.l1 - pi.l2)).exp()
}

/// The substitution `lambda -> pi` of the log-gamma Littlewood identity.
pub fn littlewood_lg_substitution(kappa: Signature2<f64>, lam: Signature2<f64>) -> Signature2<f64> {
    let s = kappa.l1 + kappa.l2;
    Signature2 {
        l1: s - lam.l2,
        l2: s - lam.l1,
    }
}

/// `int int exp(logf(x, y)) dy dx` by nested adaptive quadrature around `(cx, cy)`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    logf: F,
    cx: f64,
    cy: f64,
    rel_tol: f64,
) -> Result<f64> {
    let inner = |x: f64| {
        integrate_line_rel(|y| logf(x, y).exp(), cy, rel_tol * 0.1)
            .map(|r| r.0)
            .unwrap_or(f64::NAN)
    };
    let (v, _) = integrate_line_rel(inner, cx, rel_tol)?;
    Ok(v)
}

/// Quadrature check of the log-gamma Cauchy identity.
pub fn check_cauchy_lg(
    lam: Signature2<f64>,
    mu: Signature2<f64>,
    alpha: f64,
    beta: f64,
    tol: f64,
) -> Result<IdentityCheck> {
    if alpha + beta <= 0.0 {
        return Err(Error::ParamDomain(format!(
            "alpha + beta = {} must be > 0",
            alpha + beta
        )));
    }
    let q = 1e-3 * tol;
    let lhs = integrate_2d(
        |k1, k2| cauchy_lg_lhs_log(lam, mu, alpha, beta, Signature2 { l1: k1, l2: k2 }),
        lam.l1.min(mu.l1),
        lam.l2.min(mu.l2),
        q,
    )?;
    let rhs = integrate_2d(
        |p1, p2| cauchy_lg_rhs_log(lam, mu, alpha, beta, Signature2 { l1: p1, l2: p2 }),
        lam.l1.max(mu.l1),
        lam.l2.max(mu.l2),
        q,
    )?;
    let out = IdentityCheck::new(lhs, rhs);
    if !(out.rel_err < tol) {
        return Err(Error::QuadratureFailure {
            residual: out.rel_err,
            tol,
        });
    }
    Ok(out)
}

/// Quadrature check of the log-gamma Littlewood identity.
pub fn check_littlewood_lg(
    kappa: Signature2<f64>,
    u: f64,
    alpha: f64,
    tol: f64,
) -> Result<IdentityCheck> {
    if u + alpha <= 0.0 {
        return Err(Error::ParamDomain(format!(
            "u + alpha = {} must be > 0",
            u + alpha
        )));
    }
    let q = 1e-3 * tol;
    let lhs = integrate_2d(
        |l1, l2| littlewood_lg_lhs_log(kappa, u, alpha, Signature2 { l1, l2 }),
        kappa.l1,
        kappa.l2,
        q,
    )?;
    let rhs = integrate_2d(
        |p1, p2| littlewood_lg_rhs_log(kappa, u, alpha, Signature2 { l1: p1, l2: p2 }),
        kappa.l1,
        kappa.l2,
        q,
    )?;
    let out = IdentityCheck::new(lhs, rhs);
    if !(out.rel_err < tol) {
        return Err(Error::QuadratureFailure {
            residual: out.rel_err,
            tol,
        });
    }
    Ok(out)
}
