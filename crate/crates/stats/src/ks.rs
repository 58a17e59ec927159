//! Two-sample Kolmogorov-Smirnov statistic for weighted samples.
//!
//! The p-value is a parametric bootstrap under the pooled null. The pooled
//! law mixes the two weighted ECDFs in proportion to their effective sample
//! sizes. Each replicate draws two independent samples from it, of sizes
//! equal to the two effective sample sizes, and recomputes the statistic.
//! Sorted uniforms are generated from exponential spacings, so a replicate
//! costs time linear in the sample sizes plus the number of atoms.

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::RngStream;

use crate::ecdf::WeightedEcdf;

/// Result of a two-sample test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    /// `sup_x |F_1(x) - F_2(x)|`.
    pub statistic: f64,
    /// Bootstrap p-value `(1 + #{D* >= D}) / (B + 1)`.
    pub p_value: f64,
    /// Number of bootstrap replicates.
    pub n_boot: usize,
    /// Effective sample sizes of the two inputs.
    pub ess: (f64, f64),
}

/// `sup_x |F_1(x) - F_2(x)|`, evaluated at every atom of either sample.
pub fn ks_statistic(a: &WeightedEcdf, b: &WeightedEcdf) -> f64 {
    let (va, wa) = (a.values(), a.weights());
    let (vb, wb) = (b.values(), b.weights());
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    let mut d = 0.0f64;
    while i < va.len() || j < vb.len() {
        let x = match (va.get(i), vb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < va.len() && va[i] == x {
            fa += wa[i];
            i += 1;
        }
        while j < vb.len() && vb[j] == x {
            fb += wb[j];
            j += 1;
        }
        d = d.max((fa - fb).abs());
    }
    d.min(1.0)
}

/// Statistic plus bootstrap p-value with `n_boot` replicates drawn from `stream`.
pub fn ks_two_sample(
    a: &WeightedEcdf,
    b: &WeightedEcdf,
    n_boot: usize,
    stream: RngStream,
) -> KsResult {
    let d = ks_statistic(a, b);
    let (ea, eb) = (a.ess(), b.ess());
    let pooled = pooled_cdf(a, b);
    let ma = ea.round().max(1.0) as usize;
    let mb = eb.round().max(1.0) as usize;
    let exceed: usize = (0..n_boot)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream.substream(r as u64).rng();
            let ua = sorted_uniforms(ma, &mut rng);
            let ub = sorted_uniforms(mb, &mut rng);
            let dstar = ks_on_atoms(&pooled, &ua, &ub);
            usize::from(dstar >= d - 1e-12)
        })
        .sum();
    KsResult {
        statistic: d,
        p_value: (1 + exceed) as f64 / (n_boot + 1) as f64,
        n_boot,
        ess: (ea, eb),
    }
}

/// Cumulative weights of the pooled law at its atoms.
fn pooled_cdf(a: &WeightedEcdf, b: &WeightedEcdf) -> Vec<f64> {
    let (ea, eb) = (a.ess(), b.ess());
    let (pa, pb) = (ea / (ea + eb), eb / (ea + eb));
    let (va, wa) = (a.values(), a.weights());
    let (vb, wb) = (b.values(), b.weights());
    let (mut i, mut j) = (0, 0);
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(va.len() + vb.len());
    while i < va.len() || j < vb.len() {
        let x = match (va.get(i), vb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < va.len() && va[i] == x {
            acc += pa * wa[i];
            i += 1;
        }
        while j < vb.len() && vb[j] == x {
            acc += pb * wb[j];
            j += 1;
        }
        out.push(acc);
    }
    if let Some(last) = out.last_mut() {
        *last = 1.0;
    }
    out
}

/// `m` sorted Uniform(0,1) variates from normalized exponential partial sums.
fn sorted_uniforms<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    let mut s = Vec::with_capacity(m);
    let mut acc = 0.0f64;
    for _ in 0..m {
        let e: f64 = rng.sample(Exp1);
        acc += e;
        s.push(acc);
    }
    let e: f64 = rng.sample(Exp1);
    let total = acc + e;
    for x in &mut s {
        *x /= total;
    }
    s
}

/// KS distance between the two samples `F^{-1}(ua)` and `F^{-1}(ub)`,
/// where `F` has cumulative weights `cum` at its atoms.
fn ks_on_atoms(cum: &[f64], ua: &[f64], ub: &[f64]) -> f64 {
    let (ma, mb) = (ua.len() as f64, ub.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    for &c in cum {
        while i < ua.len() && ua[i] <= c {
            i += 1;
        }
        while j < ub.len() && ub[j] <= c {
            j += 1;
        }
        d = d.max((i as f64 / ma - j as f64 / mb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn uniform(n: usize, shift: f64, seed: u64) -> Vec<f64> {
        let mut rng = RngStream::new(seed, 0).rng();
        (0..n).map(|_| rng.random::<f64>() + shift).collect()
    }

    #[test]
    fn identical_samples_have_zero_statistic() {
        let x = uniform(1000, 0.0, 1);
        let e = WeightedEcdf::unweighted(&x).unwrap();
        assert_eq!(ks_statistic(&e, &e), 0.0);
        let r = ks_two_sample(&e, &e, 99, RngStream::new(1, 1));
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn shifted_uniforms_give_one_half() {
        let a = WeightedEcdf::unweighted(&uniform(10_000, 0.0, 2)).unwrap();
        let b = WeightedEcdf::unweighted(&uniform(10_000, 0.5, 3)).unwrap();
        let d = ks_statistic(&a, &b);
        assert!((d - 0.5).abs() < 0.02, "{d}");
        let r = ks_two_sample(&a, &b, 99, RngStream::new(2, 0));
        assert!(r.p_value < 0.02);
    }

    #[test]
    fn discrete_samples_use_atoms() {
        let a = WeightedEcdf::new(&[0.0, 1.0], &[0.5, 0.5]).unwrap();
        let b = WeightedEcdf::new(&[0.0, 1.0], &[0.25, 0.75]).unwrap();
        assert!((ks_statistic(&a, &b) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn weighting_matches_duplication() {
        let a = WeightedEcdf::new(&[0.1, 0.7, 0.3], &[2.0, 1.0, 1.0]).unwrap();
        let b = WeightedEcdf::unweighted(&[0.1, 0.1, 0.7, 0.3]).unwrap();
        let c = WeightedEcdf::unweighted(&[0.2, 0.5]).unwrap();
        assert_eq!(ks_statistic(&a, &c), ks_statistic(&b, &c));
    }

    #[test]
    fn bootstrap_is_reproducible() {
        let a = WeightedEcdf::unweighted(&uniform(500, 0.0, 5)).unwrap();
        let b = WeightedEcdf::unweighted(&uniform(500, 0.05, 6)).unwrap();
        let r1 = ks_two_sample(&a, &b, 200, RngStream::new(9, 0));
        let r2 = ks_two_sample(&a, &b, 200, RngStream::new(9, 0));
        assert_eq!(r1, r2);
    }

    #[test]
    fn sorted_uniforms_are_sorted_and_uniform() {
        let mut rng = RngStream::new(4, 0).rng();
        let u = sorted_uniforms(100_000, &mut rng);
        assert!(u.windows(2).all(|w| w[0] <= w[1]));
        assert!(u[0] > 0.0 && *u.last().unwrap() < 1.0);
        let mean = u.iter().sum::<f64>() / u.len() as f64;
        assert!((mean - 0.5).abs() < 0.01);
    }
}
