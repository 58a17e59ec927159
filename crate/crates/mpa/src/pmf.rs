//! The stationary increment law as a matrix product.

use nalgebra::{DMatrix, RowDVector};
use serde::{Deserialize, Serialize};

use stripgibbs_core::{DownRightPath, Error, ModelKind, ModelParams, Result, Step};

use crate::operator::boundary_vector;

/// Largest truncation tried by [`mpa_pmf`].
pub const MAX_TRUNC: usize = 2048;

/// A matrix product probability together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpaPmf {
    /// `w^T prod M v / Z`.
    pub value: f64,
    /// Unnormalized weight `w^T prod M v`.
    pub weight: f64,
    /// Normalization `Z = w^T prod (sum_x M_x) v`.
    pub z: f64,
    /// Truncation used.
    pub trunc_k: usize,
    /// Relative change of the probability when the truncation was doubled.
    pub trunc_err: f64,
}

/// `sum_x M^->_x[a]` on `[0, K)^2`, or its transpose for `Step::Down`.
fn summed_operator(a: f64, k: usize, dir: Step) -> DMatrix<f64> {
    let m = DMatrix::from_fn(k, k, |n, np| {
        let x0 = np.saturating_sub(n);
        // sum_{x = x0}^{n'} a^{2x + n - n'}
        let lead = a.powi(n as i32 - np as i32 + 2 * x0 as i32);
        lead * (1.0 - (a * a).powi((np - x0 + 1) as i32)) / (1.0 - a * a)
    });
    match dir {
        Step::Right => m,
        Step::Down => m.transpose(),
    }
}

fn check(params: &ModelParams, path: &DownRightPath) -> Result<Vec<f64>> {
    if params.model != ModelKind::GeometricLpp {
        return Err(Error::ParamDomain(
            "the matrix product form is for geometric last passage percolation".into(),
        ));
    }
    if path.n() != params.n() {
        return Err(Error::ParamDomain(format!(
            "path has {} steps, parameters {}",
            path.n(),
            params.n()
        )));
    }
    Ok(path.edge_labels(params))
}

/// `u^T M^{dir}_x[a]` in `O(K)` operations, using the Toeplitz structure.
fn apply_m(u: &RowDVector<f64>, x: usize, a: f64, dir: Step) -> RowDVector<f64> {
    let k = u.len();
    let ax = a.powi(x as i32);
    let mut out = RowDVector::zeros(k);
    match dir {
        Step::Right => {
            // out(n') = a^x R(n' - x), R(t) = sum_{n >= t} u(n) a^{n - t}
            let mut r = vec![0.0; k + 1];
            for t in (0..k).rev() {
                r[t] = u[t] + a * r[t + 1];
            }
            for np in x..k {
                out[np] = ax * r[np - x];
            }
        }
        Step::Down => {
            // out(n') = a^x P(x + n'), P(s) = sum_{n = x}^{min(s, K-1)} u(n) a^{s - n}
            let mut p = 0.0;
            for s in x..x + k {
                p = a * p + if s < k { u[s] } else { 0.0 };
                out[s - x] = ax * p;
            }
        }
    }
    out
}

/// Unnormalized weight `w^T (prod_i M^{dir_i}_{x_i}[b_i]) v` at truncation `k`.
pub fn mpa_weight(path: &DownRightPath, x: &[u64], params: &ModelParams, k: usize) -> Result<f64> {
    let labels = check(params, path)?;
    if x.len() != labels.len() {
        return Err(Error::ParamDomain(format!(
            "expected {} increments, got {}",
            labels.len(),
            x.len()
        )));
    }
    if k == 0 {
        return Err(Error::ParamDomain("truncation size K must be >= 1".into()));
    }
    let mut row: RowDVector<f64> = boundary_vector(&params.left, k).entries.transpose();
    for ((&b, &dir), &xi) in labels.iter().zip(&path.steps).zip(x) {
        row = apply_m(&row, xi as usize, b, dir);
    }
    Ok(row.dot(&boundary_vector(&params.right, k).entries.transpose()))
}

fn normalization(
    path: &DownRightPath,
    labels: &[f64],
    params: &ModelParams,
    k: usize,
) -> Result<f64> {
    let mut row: RowDVector<f64> = boundary_vector(&params.left, k).entries.transpose();
    for (&b, &dir) in labels.iter().zip(&path.steps) {
        row = &row * summed_operator(b, k, dir);
    }
    Ok(row.dot(&boundary_vector(&params.right, k).entries.transpose()))
}

/// Normalization `Z = w^T (prod_i sum_x M^{dir_i}_x[b_i]) v` at truncation `k`.
pub fn mpa_normalization(path: &DownRightPath, params: &ModelParams, k: usize) -> Result<f64> {
    let labels = check(params, path)?;
    normalization(path, &labels, params, k)
}

/// Probability of the increments `x` on `path`.
///
/// The truncation starts at `K = 64` and doubles until the probability
/// changes by less than `rel_tol` in relative terms. Requires `c1 c2 < 1`.
pub fn mpa_pmf(
    path: &DownRightPath,
    x: &[u64],
    params: &ModelParams,
    rel_tol: f64,
) -> Result<MpaPmf> {
    Ok(mpa_pmf_many(path, std::slice::from_ref(&x.to_vec()), params, rel_tol)?.remove(0))
}

/// [`mpa_pmf`] for several increment vectors sharing one normalization.
pub fn mpa_pmf_many(
    path: &DownRightPath,
    xs: &[Vec<u64>],
    params: &ModelParams,
    rel_tol: f64,
) -> Result<Vec<MpaPmf>> {
    let labels = check(params, path)?;
    if !params.fan_region {
        return Err(Error::ShockRegion);
    }
    let eval = |k: usize| -> Result<(Vec<f64>, f64)> {
        let z = normalization(path, &labels, params, k)?;
        let w = xs
            .iter()
            .map(|x| mpa_weight(path, x, params, k))
            .collect::<Result<Vec<_>>>()?;
        Ok((w, z))
    };
    let rel = |p: f64, p2: f64| {
        if p2 == 0.0 {
            p.abs()
        } else {
            ((p - p2) / p2).abs()
        }
    };
    let mut k = 64;
    let (mut weights, mut z) = eval(k)?;
    let mut last_err = f64::INFINITY;
    loop {
        let next = 2 * k;
        if next > MAX_TRUNC {
            return Err(Error::TruncationTooSmall {
                bound: last_err,
                tol: rel_tol,
            });
        }
        let (w2, z2) = eval(next)?;
        let err = weights
            .iter()
            .zip(&w2)
            .map(|(&w, &v)| rel(w / z, v / z2))
            .fold(rel(z, z2), f64::max);
        if err < rel_tol {
            return Ok(w2
                .iter()
                .map(|&w| MpaPmf {
                    value: w / z2,
                    weight: w,
                    z: z2,
                    trunc_k: next,
                    trunc_err: err,
                })
                .collect());
        }
        last_err = err;
        k = next;
        weights = w2;
        z = z2;
    }
}
