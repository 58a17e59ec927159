//! The increment chain on the horizontal path.

use rand::Rng;
use rayon::prelude::*;

use stripgibbs_core::{GeomSampler, ModelParams, Result, RngStream};

/// Precomputed samplers for translation steps started from horizontal paths.
///
/// After `k` steps the horizontal path sits at `(k + j, k)`; the next step
/// creates the vertices `(k + 1 + j, k + 1)`, whose weights use the labels
/// `a_{k+1} a_{k+1+j}` in the bulk and `a_{k+1} c1`, `a_{k+1} c2` at the ends.
#[derive(Debug, Clone)]
pub struct HorizontalKernel {
    n: usize,
    /// `samplers[r]` serves steps with `k = r mod N`: index 0 is the left
    /// boundary, `1..N` the bulk, `N` the right boundary.
    samplers: Vec<Vec<GeomSampler>>,
}

impl HorizontalKernel {
    /// Kernel for geometric parameters.
    pub fn new(params: &ModelParams) -> Result<Self> {
        let n = params.n();
        let mut samplers = Vec::with_capacity(n);
        for r in 0..n as i64 {
            let row = r + 1;
            let mut v = Vec::with_capacity(n + 1);
            v.push(GeomSampler::new(params.boundary_weight_param(row, true))?);
            for j in 1..n as i64 {
                v.push(GeomSampler::new(params.bulk_weight_param(row, row + j))?);
            }
            v.push(GeomSampler::new(params.boundary_weight_param(row, false))?);
            samplers.push(v);
        }
        Ok(Self { n, samplers })
    }

    /// Strip width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// One translation step on centered values `g[0..=N]` (with `g[0] = 0`)
    /// at step count `k`; the result is re-centered.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, g: &mut [i64], k: usize, rng: &mut R) {
        let s = &self.samplers[k % self.n];
        let n = self.n;
        g[0] = g[1] + s[0].sample(rng) as i64;
        for j in 1..n {
            g[j] = g[j - 1].max(g[j + 1]) + s[j].sample(rng) as i64;
        }
        g[n] = g[n - 1] + s[n].sample(rng) as i64;
        let g0 = g[0];
        for x in g.iter_mut() {
            *x -= g0;
        }
    }
}

/// Runs the increment chain for `k_steps` translation steps from the
/// horizontal path with centered initial increments `init`.
///
/// Returns `k_steps + 1` increment vectors; the first is `init`.
pub fn run_increment_chain<R: Rng + ?Sized>(
    init: &[i64],
    params: &ModelParams,
    k_steps: usize,
    rng: &mut R,
) -> Result<Vec<Vec<i64>>> {
    let kernel = HorizontalKernel::new(params)?;
    let mut g = Vec::with_capacity(init.len() + 1);
    g.push(0);
    g.extend_from_slice(init);
    let mut out = Vec::with_capacity(k_steps + 1);
    out.push(init.to_vec());
    for k in 0..k_steps {
        kernel.step(&mut g, k, rng);
        out.push(g[1..].to_vec());
    }
    Ok(out)
}

/// Terminal increments of `n` independent chains of `k_steps` steps from
/// the same initial increments; replica `i` uses `stream.substream(i)`.
pub fn run_replicas(
    init: &[i64],
    params: &ModelParams,
    k_steps: usize,
    n: usize,
    stream: RngStream,
) -> Result<Vec<Vec<i64>>> {
    let kernel = HorizontalKernel::new(params)?;
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream.substream(i as u64).rng();
            let mut g = Vec::with_capacity(init.len() + 1);
            g.push(0);
            g.extend_from_slice(init);
            for k in 0..k_steps {
                kernel.step(&mut g, k, &mut rng);
            }
            g[1..].to_vec()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{lpp_tau1_step, LppState};
    use stripgibbs_core::ModelKind;

    #[test]
    fn zero_steps_returns_init() {
        let p = ModelParams::homogeneous(ModelKind::GeometricLpp, 3, 0.4, 0.9, 0.9).unwrap();
        let mut rng = RngStream::new(1, 0).rng();
        assert_eq!(
            run_increment_chain(&[1, 2, 3], &p, 0, &mut rng).unwrap(),
            vec![vec![1, 2, 3]]
        );
    }

    #[test]
    fn same_seed_same_trajectory() {
        let p = ModelParams::homogeneous(ModelKind::GeometricLpp, 4, 0.4, 0.9, 0.9).unwrap();
        let a = run_increment_chain(&[0; 4], &p, 50, &mut RngStream::new(3, 1).rng()).unwrap();
        let b = run_increment_chain(&[0; 4], &p, 50, &mut RngStream::new(3, 1).rng()).unwrap();
        assert_eq!(a, b);
        let c = run_increment_chain(&[0; 4], &p, 50, &mut RngStream::new(3, 2).rng()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn fast_kernel_matches_generic_step_draw_for_draw() {
        let p =
            ModelParams::new(ModelKind::GeometricLpp, vec![0.2, 0.5, 0.7, 0.3], 1.1, 0.8).unwrap();
        let mut r1 = RngStream::new(8, 0).rng();
        let mut r2 = RngStream::new(8, 0).rng();
        let chain = run_increment_chain(&[2, 2, 5, 9], &p, 25, &mut r1).unwrap();
        let mut s = LppState::horizontal(&[2, 2, 5, 9]);
        for expected in &chain[1..] {
            s = lpp_tau1_step(&s, &p, &mut r2).unwrap();
            assert_eq!(&s.increments(), expected);
        }
    }

    #[test]
    fn increments_stay_nonnegative() {
        let p = ModelParams::homogeneous(ModelKind::GeometricLpp, 5, 0.5, 1.5, 1.5).unwrap();
        let traj = run_increment_chain(&[0; 5], &p, 2000, &mut RngStream::new(4, 0).rng()).unwrap();
        for inc in traj {
            assert!(inc.iter().all(|&x| x >= 0));
            assert!(inc.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
