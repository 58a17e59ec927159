//! The increment chain on the horizontal path.

use rand::Rng;
use rayon::prelude::*;

use stripgibbs_core::{logaddexp, LogInvGammaSampler, ModelParams, Result, RngStream};

/// Precomputed samplers for translation steps started from horizontal paths.
///
/// Step `k` creates the vertices `(k + 1 + j, k + 1)`, with parameters
/// `alpha_{k+1} + alpha_{k+1+j}` in the bulk and `alpha_{k+1} + u`,
/// `alpha_{k+1} + v` at the ends.
#[derive(Debug, Clone)]
pub struct HorizontalKernelLg {
    n: usize,
    samplers: Vec<Vec<LogInvGammaSampler>>,
}

impl HorizontalKernelLg {
    /// Kernel for log-gamma parameters.
    pub fn new(params: &ModelParams) -> Result<Self> {
        let n = params.n();
        let mut samplers = Vec::with_capacity(n);
        for r in 0..n as i64 {
            let row = r + 1;
            let mut v = Vec::with_capacity(n + 1);
            v.push(LogInvGammaSampler::new(
                params.boundary_weight_param(row, true),
            )?);
            for j in 1..n as i64 {
                v.push(LogInvGammaSampler::new(
                    params.bulk_weight_param(row, row + j),
                )?);
            }
            v.push(LogInvGammaSampler::new(
                params.boundary_weight_param(row, false),
            )?);
            samplers.push(v);
        }
        Ok(Self { n, samplers })
    }

    /// Strip width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// One translation step on centered values `h[0..=N]` at step count `k`;
    /// the result is re-centered so that `h[0] = 0`.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, h: &mut [f64], k: usize, rng: &mut R) {
        let s = &self.samplers[k % self.n];
        let n = self.n;
        h[0] = h[1] + s[0].sample(rng);
        for j in 1..n {
            h[j] = logaddexp(h[j - 1], h[j + 1]) + s[j].sample(rng);
        }
        h[n] = h[n - 1] + s[n].sample(rng);
        let h0 = h[0];
        for x in h.iter_mut() {
            *x -= h0;
        }
    }
}

/// Runs the increment chain for `k_steps` translation steps from the
/// horizontal path with centered initial increments `init`.
///
/// Returns `k_steps + 1` increment vectors; the first is `init`.
pub fn run_increment_chain_lg<R: Rng + ?Sized>(
    init: &[f64],
    params: &ModelParams,
    k_steps: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    let kernel = HorizontalKernelLg::new(params)?;
    let mut h = Vec::with_capacity(init.len() + 1);
    h.push(0.0);
    h.extend_from_slice(init);
    let mut out = Vec::with_capacity(k_steps + 1);
    out.push(init.to_vec());
    for k in 0..k_steps {
        kernel.step(&mut h, k, rng);
        out.push(h[1..].to_vec());
    }
    Ok(out)
}

/// Terminal increments of `n` independent chains; replica `i` uses `stream.substream(i)`.
pub fn run_replicas_lg(
    init: &[f64],
    params: &ModelParams,
    k_steps: usize,
    n: usize,
    stream: RngStream,
) -> Result<Vec<Vec<f64>>> {
    let kernel = HorizontalKernelLg::new(params)?;
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream.substream(i as u64).rng();
            let mut h = Vec::with_capacity(init.len() + 1);
            h.push(0.0);
            h.extend_from_slice(init);
            for k in 0..k_steps {
                kernel.step(&mut h, k, &mut rng);
            }
            h[1..].to_vec()
        })
        .collect())
}
