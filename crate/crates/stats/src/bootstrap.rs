//! Nonparametric bootstrap over sample indices.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::RngStream;

/// Summary of bootstrap replicates of a statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapSummary {
    /// Statistic on the original sample.
    pub estimate: f64,
    /// Standard deviation of the replicates.
    pub std_error: f64,
    /// Lower end of the 95% percentile interval.
    pub lo: f64,
    /// Upper end of the 95% percentile interval.
    pub hi: f64,
}

/// Resamples `0..n` with replacement `b` times and evaluates `stat` on each
/// index multiset. `stat` receives the identity resample for the estimate.
pub fn bootstrap<F>(n: usize, b: usize, stream: RngStream, stat: F) -> BootstrapSummary
where
    F: Fn(&[usize]) -> f64 + Sync,
{
    let identity: Vec<usize> = (0..n).collect();
    let estimate = stat(&identity);
    let mut reps: Vec<f64> = (0..b)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream.substream(r as u64).rng();
            let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            stat(&idx)
        })
        .collect();
    reps.retain(|x| x.is_finite());
    if reps.is_empty() {
        return BootstrapSummary {
            estimate,
            std_error: f64::NAN,
            lo: f64::NAN,
            hi: f64::NAN,
        };
    }
    let m = reps.iter().sum::<f64>() / reps.len() as f64;
    let var = reps.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (reps.len().max(2) - 1) as f64;
    reps.sort_by(f64::total_cmp);
    let q = |p: f64| reps[((p * (reps.len() - 1) as f64).round() as usize).min(reps.len() - 1)];
    BootstrapSummary {
        estimate,
        std_error: var.sqrt(),
        lo: q(0.025),
        hi: q(0.975),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_standard_error() {
        let mut rng = RngStream::new(31, 0).rng();
        let x: Vec<f64> = (0..4000).map(|_| rng.random::<f64>()).collect();
        let s = bootstrap(x.len(), 400, RngStream::new(31, 1), |idx| {
            idx.iter().map(|&i| x[i]).sum::<f64>() / idx.len() as f64
        });
        let se = (1.0f64 / 12.0 / 4000.0).sqrt();
        assert!(
            (s.std_error / se - 1.0).abs() < 0.2,
            "{} vs {se}",
            s.std_error
        );
        assert!(s.lo < s.estimate && s.estimate < s.hi);
    }
}
