//! Geometric push-block kernels.
//!
//! Each kernel moves one vertex of both layers at once. Its law does not
//! depend on the value being replaced and preserves the local Gibbs weight:
//!
//! * bulk, with neighbours `lambda` (label `a`) and `mu` (label `b`), `q = ab`:
//!   `pi_1 = max(lambda_1, mu_1) + Geom(q)` and, independently,
//!   `pi_2` on `[max(lambda_2, mu_2), min(lambda_1, mu_1)]` with weight `q^{pi_2}`;
//! * boundary, with neighbour `kappa`, label `a` and boundary parameter `c`:
//!   `pi_1 = kappa_1 + Geom(ac)` and `pi_2` on `[kappa_2, kappa_1]` with
//!   weight `(a/c)^{pi_2}`.
//!
//! `Geom(q)` has pmf `(1-q) q^k` on `k >= 0`.

use num_traits::{Num, One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{Error, GeomSampler, Rational, Result};

use crate::identities::{cauchy_rhs_term, littlewood_rhs_term};
use crate::signature::Signature2;

type Sig = Signature2<i64>;

fn pw<T: Num + Clone>(x: &T, k: i64) -> T {
    num_traits::pow(x.clone(), k as usize)
}

fn finite_geometric_sum<T: Num + Clone>(r: &T, n: i64) -> T {
    let mut s = T::zero();
    let mut t = T::one();
    for _ in 0..=n {
        s = s + t.clone();
        t = t * r.clone();
    }
    s
}

/// Exact bulk kernel probability of `pi` given neighbours `lambda`, `mu`.
pub fn bulk_pmf<T: Num + Clone>(pi: Sig, lam: Sig, mu: Sig, a: &T, b: &T) -> T {
    let lo = lam.l2.max(mu.l2);
    let hi = lam.l1.min(mu.l1);
    let m1 = lam.l1.max(mu.l1);
    if pi.l1 < m1 || pi.l2 < lo || pi.l2 > hi {
        return T::zero();
    }
    let q = a.clone() * b.clone();
    let first = (T::one() - q.clone()) * pw(&q, pi.l1 - m1);
    first * pw(&q, pi.l2 - lo) / finite_geometric_sum(&q, hi - lo)
}

/// Exact boundary kernel probability of `pi` given the neighbour `kappa`.
pub fn boundary_pmf<T: Num + Clone>(pi: Sig, kappa: Sig, a: &T, c: &T) -> T {
    if pi.l1 < kappa.l1 || pi.l2 < kappa.l2 || pi.l2 > kappa.l1 {
        return T::zero();
    }
    let q = a.clone() * c.clone();
    let first = (T::one() - q.clone()) * pw(&q, pi.l1 - kappa.l1);
    // (a/c)^k / sum_{i<=n} (a/c)^i = a^k c^{n-k} / sum_i a^i c^{n-i}
    let n = kappa.l1 - kappa.l2;
    let k = pi.l2 - kappa.l2;
    let mut den = T::zero();
    for i in 0..=n {
        den = den + pw(a, i) * pw(c, n - i);
    }
    first * pw(a, k) * pw(c, n - k) / den
}

/// Sum of `bulk_pmf` over `pi_2` and over `pi_1` in closed form.
///
/// The `pi_1` series `sum_k (1-q) q^k` is summed analytically and the
/// finite `pi_2` range explicitly, so the result is exactly one whenever
/// the kernel is stochastic.
pub fn bulk_total_mass(lam: Sig, mu: Sig, a: &Rational, b: &Rational) -> Rational {
    let m1 = lam.l1.max(mu.l1);
    let q = a * b;
    let mut total = Rational::zero();
    for p2 in lam.l2.max(mu.l2)..=lam.l1.min(mu.l1) {
        total += bulk_pmf(Sig::new(m1, p2), lam, mu, a, b) / (Rational::one() - &q);
    }
    total
}

/// Total boundary kernel mass, summed as in [`bulk_total_mass`].
pub fn boundary_total_mass(kappa: Sig, a: &Rational, c: &Rational) -> Rational {
    let q = a * c;
    let mut total = Rational::zero();
    for p2 in kappa.l2..=kappa.l1 {
        total += boundary_pmf(Sig::new(kappa.l1, p2), kappa, a, c) / (Rational::one() - &q);
    }
    total
}

/// `sum_kappa w_before(kappa)` for the bulk move: the `kappa_1` range is
/// finite and the `kappa_2` series below `min(lambda_2, mu_2)` is geometric.
fn bulk_before_mass(lam: Sig, mu: Sig, a: &Rational, b: &Rational) -> Rational {
    let m2 = lam.l2.min(mu.l2);
    let q = a * b;
    let tail = pw(a, lam.l2 - m2) * pw(b, mu.l2 - m2) / (Rational::one() - q);
    let mut s = Rational::zero();
    for k1 in lam.l2.max(mu.l2)..=lam.l1.min(mu.l1) {
        s += pw(a, lam.l1 - k1) * pw(b, mu.l1 - k1);
    }
    s * tail
}

/// `sum_lambda w_before(lambda)` for a boundary move, by the same splitting.
fn boundary_before_mass(kappa: Sig, a: &Rational, c: &Rational) -> Rational {
    let q = a * c;
    let mut s = Rational::zero();
    // lambda_1 in [kappa_2, kappa_1]; lambda_2 <= kappa_2 runs to -infinity.
    for l1 in kappa.l2..=kappa.l1 {
        // sum_{l2 <= kappa_2} a^{kappa_1 - l1 + kappa_2 - l2} c^{l1 - l2}
        s += pw(a, kappa.l1 - l1) * pw(c, l1 - kappa.l2) / (Rational::one() - &q);
    }
    s
}

/// Residual `U(pi) * sum_kappa w_before(kappa) - w_after(pi)` of the bulk move.
pub fn bulk_weight_residual(pi: Sig, lam: Sig, mu: Sig, a: &Rational, b: &Rational) -> Rational {
    bulk_pmf(pi, lam, mu, a, b) * bulk_before_mass(lam, mu, a, b)
        - cauchy_rhs_term(lam, mu, pi, a, b)
}

/// Residual of a boundary move, defined as for [`bulk_weight_residual`].
pub fn boundary_weight_residual(pi: Sig, kappa: Sig, a: &Rational, c: &Rational) -> Rational {
    boundary_pmf(pi, kappa, a, c) * boundary_before_mass(kappa, a, c)
        - littlewood_rhs_term(kappa, pi, a, c)
}

/// A sampled geometric push-block law: `pi_1 = pi1_min + Geom(q)` and,
/// independently, `pi_2` on `[pi2_lo, pi2_hi]` with weight `ratio^{pi_2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeomKernel {
    /// Smallest value of `pi_1`.
    pub pi1_min: i64,
    /// Parameter of the geometric overshoot of `pi_1`.
    pub q: f64,
    /// Lower end of the `pi_2` range.
    pub pi2_lo: i64,
    /// Upper end of the `pi_2` range.
    pub pi2_hi: i64,
    /// Ratio of successive `pi_2` weights.
    pub ratio: f64,
}

impl GeomKernel {
    /// Draws `pi_1`, using exactly one geometric draw with parameter `q`.
    pub fn sample_pi1<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let g = GeomSampler::new(self.q).expect("kernel parameter checked at construction");
        self.pi1_min + g.sample(rng) as i64
    }

    /// Draws `pi_2` by inversion of its truncated geometric law.
    pub fn sample_pi2<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let n = self.pi2_hi - self.pi2_lo;
        if n == 0 {
            return self.pi2_lo;
        }
        let (r, from_top) = if self.ratio > 1.0 {
            (1.0 / self.ratio, true)
        } else {
            (self.ratio, false)
        };
        let k = if r == 1.0 {
            rng.random_range(0..=n)
        } else if r == 0.0 {
            0
        } else {
            let u: f64 = rng.random();
            let mass = -(r.ln() * (n + 1) as f64).exp_m1();
            let k = ((-u * mass).ln_1p() / r.ln()).floor();
            (k.max(0.0) as i64).min(n)
        };
        if from_top {
            self.pi2_hi - k
        } else {
            self.pi2_lo + k
        }
    }

    /// Draws `(pi_1, pi_2)` with `pi_1` from `rng1` and `pi_2` from `rng2`.
    pub fn sample<R1: Rng + ?Sized, R2: Rng + ?Sized>(&self, rng1: &mut R1, rng2: &mut R2) -> Sig {
        Sig::new(self.sample_pi1(rng1), self.sample_pi2(rng2))
    }

    /// Probability of `pi` in floating point.
    pub fn pmf(&self, pi: Sig) -> f64 {
        if pi.l1 < self.pi1_min || pi.l2 < self.pi2_lo || pi.l2 > self.pi2_hi {
            return 0.0;
        }
        let p1 = (1.0 - self.q) * self.q.powi((pi.l1 - self.pi1_min) as i32);
        let n = self.pi2_hi - self.pi2_lo;
        let k = pi.l2 - self.pi2_lo;
        let w: Vec<f64> = (0..=n).map(|i| (i - k) as f64 * self.ratio.ln()).collect();
        let z: f64 = w.iter().map(|x| x.exp()).sum();
        p1 / z
    }
}

fn check_unit(name: &str, q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::ParamDomain(format!(
            "{name} = {q} must lie in [0, 1)"
        )));
    }
    Ok(())
}

/// Bulk kernel given `lambda` (edge label `a`) and `mu` (edge label `b`).
pub fn kernel_bulk(lam: Sig, mu: Sig, a: f64, b: f64) -> Result<GeomKernel> {
    let q = a * b;
    check_unit("ab", q)?;
    let (lo, hi) = (lam.l2.max(mu.l2), lam.l1.min(mu.l1));
    if lo > hi {
        return Err(Error::ParamDomain(
            "neighbours admit no interlacing value".into(),
        ));
    }
    Ok(GeomKernel {
        pi1_min: lam.l1.max(mu.l1),
        q,
        pi2_lo: lo,
        pi2_hi: hi,
        ratio: q,
    })
}

fn kernel_boundary(kappa: Sig, a: f64, c: f64, which: &str) -> Result<GeomKernel> {
    let q = a * c;
    check_unit(which, q)?;
    if a <= 0.0 || c <= 0.0 || kappa.l1 < kappa.l2 {
        return Err(Error::ParamDomain(format!(
            "boundary kernel needs a, c > 0 and an ordered neighbour ({which})"
        )));
    }
    Ok(GeomKernel {
        pi1_min: kappa.l1,
        q,
        pi2_lo: kappa.l2,
        pi2_hi: kappa.l1,
        ratio: a / c,
    })
}

/// Left boundary kernel given the neighbour `kappa = lambda^(1)`.
pub fn kernel_left(kappa: Sig, c1: f64, a: f64) -> Result<GeomKernel> {
    kernel_boundary(kappa, a, c1, "a c1")
}

/// Right boundary kernel given the neighbour `kappa = lambda^(N-1)`.
pub fn kernel_right(kappa: Sig, a: f64, c2: f64) -> Result<GeomKernel> {
    kernel_boundary(kappa, a, c2, "a c2")
}
