//! Weighted samples of a process observed at finitely many points.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{logsumexp, Error, Result, RngStream};
use stripgibbs_stats::{ess_from_log_weights, ks_statistic, WeightedEcdf};

/// Values of `B_1` at `points`, one row per point, with log importance weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalSample {
    /// Observation points.
    pub points: Vec<f64>,
    /// `values[p][i]` is `B_1(points[p])` in sample `i`.
    pub values: Vec<Vec<f64>>,
    /// Log importance weights, one per sample.
    pub log_weights: Vec<f64>,
}

impl MarginalSample {
    /// Number of samples.
    pub fn len(&self) -> usize {
        self.log_weights.len()
    }

    /// Whether there are no samples.
    pub fn is_empty(&self) -> bool {
        self.log_weights.is_empty()
    }

    /// Effective sample size.
    pub fn ess(&self) -> Result<f64> {
        ess_from_log_weights(&self.log_weights)
    }

    /// `log` of the mean weight.
    pub fn log_mean_weight(&self) -> f64 {
        logsumexp(&self.log_weights) - (self.len() as f64).ln()
    }

    /// Weighted ECDF at observation point `p`.
    pub fn ecdf(&self, p: usize) -> Result<WeightedEcdf> {
        WeightedEcdf::from_log_weights(&self.values[p], &self.log_weights)
    }

    /// Weighted KS distance to `other` at every common observation point.
    pub fn ks_by_point(&self, other: &MarginalSample) -> Result<Vec<f64>> {
        (0..self.points.len())
            .map(|p| Ok(ks_statistic(&self.ecdf(p)?, &other.ecdf(p)?)))
            .collect()
    }

    /// Delta-method standard error of [`MarginalSample::log_mean_weight`].
    pub fn log_mean_weight_se(&self) -> f64 {
        log_mean_se(&self.log_weights)
    }
}

/// Standard error of `log mean(e^{lw})` by the delta method.
pub(crate) fn log_mean_se(lw: &[f64]) -> f64 {
    let n = lw.len() as f64;
    let top = lw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = lw.iter().map(|&x| (x - top).exp()).collect();
    let mean = w.iter().sum::<f64>() / n;
    let var = w.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (var / n).sqrt() / mean
}

/// One observation point of a sample, sorted by value.
struct Sorted {
    values: Vec<f64>,
    order: Vec<usize>,
}

impl Sorted {
    fn new(values: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        Self {
            values: order.iter().map(|&i| values[i]).collect(),
            order,
        }
    }
}

/// Weighted KS distance between two sorted samples with unnormalized weights
/// `wa[order_a[k]]`, `wb[order_b[k]]`.
fn ks_sorted(a: &Sorted, wa: &[f64], b: &Sorted, wb: &[f64]) -> f64 {
    let ta: f64 = wa.iter().sum();
    let tb: f64 = wb.iter().sum();
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb, mut d) = (0.0f64, 0.0f64, 0.0f64);
    while i < a.values.len() || j < b.values.len() {
        let x = match (a.values.get(i), b.values.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < a.values.len() && a.values[i] == x {
            fa += wa[a.order[i]];
            i += 1;
        }
        while j < b.values.len() && b.values[j] == x {
            fb += wb[b.order[j]];
            j += 1;
        }
        d = d.max((fa / ta - fb / tb).abs());
    }
    d
}

fn linear_weights(lw: &[f64]) -> Vec<f64> {
    let top = lw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    lw.iter().map(|&x| (x - top).exp()).collect()
}

fn resample_weights<R: Rng + ?Sized>(w: &[f64], rng: &mut R) -> Vec<f64> {
    let n = w.len();
    let mut c = vec![0u32; n];
    for _ in 0..n {
        c[rng.random_range(0..n)] += 1;
    }
    w.iter().zip(c).map(|(&x, k)| x * k as f64).collect()
}

/// Bootstrap percentile interval of `max_p KS(a_p, b_p)`, resampling both
/// samples independently `n_boot` times.
pub fn ks_max_bootstrap(
    a: &MarginalSample,
    b: &MarginalSample,
    n_boot: usize,
    stream: RngStream,
) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() || n_boot == 0 {
        return Err(Error::EmptySample);
    }
    let sa: Vec<Sorted> = a.values.iter().map(|v| Sorted::new(v)).collect();
    let sb: Vec<Sorted> = b.values.iter().map(|v| Sorted::new(v)).collect();
    let (wa, wb) = (
        linear_weights(&a.log_weights),
        linear_weights(&b.log_weights),
    );
    let mut reps: Vec<f64> = (0..n_boot)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream.substream(r as u64).rng();
            let ra = resample_weights(&wa, &mut rng);
            let rb = resample_weights(&wb, &mut rng);
            sa.iter()
                .zip(&sb)
                .map(|(x, y)| ks_sorted(x, &ra, y, &rb))
                .fold(0.0, f64::max)
        })
        .collect();
    reps.sort_by(f64::total_cmp);
    let q = |p: f64| reps[((p * (reps.len() - 1) as f64).round() as usize).min(reps.len() - 1)];
    Ok((q(0.025), q(0.975)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, StandardNormal};

    fn normal_sample(n: usize, shift: f64, seed: u64) -> MarginalSample {
        let mut rng = RngStream::new(seed, 0).rng();
        let v: Vec<f64> = (0..n)
            .map(|_| shift + Distribution::<f64>::sample(&StandardNormal, &mut rng))
            .collect();
        MarginalSample {
            points: vec![1.0],
            values: vec![v],
            log_weights: vec![0.0; n],
        }
    }

    #[test]
    fn bootstrap_interval_covers_the_estimate() {
        let a = normal_sample(4000, 0.0, 1);
        let b = normal_sample(4000, 0.2, 2);
        let d = a.ks_by_point(&b).unwrap()[0];
        let (lo, hi) = ks_max_bootstrap(&a, &b, 100, RngStream::new(3, 0)).unwrap();
        assert!(lo <= d + 0.01 && d - 0.01 <= hi, "{lo} {d} {hi}");
        assert!(hi - lo < 0.1);
    }

    #[test]
    fn sorted_merge_agrees_with_weighted_ecdf_distance() {
        let a = normal_sample(500, 0.0, 7);
        let mut b = normal_sample(700, 0.3, 8);
        b.log_weights = b.values[0].iter().map(|x| -0.5 * x).collect();
        b.values[0][3] = a.values[0][10];
        let direct = a.ks_by_point(&b).unwrap()[0];
        let merged = ks_sorted(
            &Sorted::new(&a.values[0]),
            &linear_weights(&a.log_weights),
            &Sorted::new(&b.values[0]),
            &linear_weights(&b.log_weights),
        );
        assert!((direct - merged).abs() < 1e-12, "{direct} {merged}");
    }

    #[test]
    fn equal_weights_give_full_ess() {
        let a = normal_sample(100, 0.0, 4);
        assert!((a.ess().unwrap() - 100.0).abs() < 1e-9);
        assert!(a.log_mean_weight().abs() < 1e-12);
    }
}
