//! Partition functions of the two-layer Gibbs measure with `lambda_1^(0)` pinned.
//!
//! For the geometric model the sum over configurations factorizes through
//! the gaps `g_j = lambda_1^(j) - lambda_2^(j)`. Summing an edge with label
//! `b` over the increments compatible with gaps `(g, g')` gives the
//! symmetric transfer kernel
//! `T_b(g, g') = b^{|g - g'|} (1 - b^{2 min(g, g') + 2}) / (1 - b^2)`,
//! for right and down edges alike, so that
//! `Z = sum_{g_0, ..., g_N} c_1^{g_0} prod_j T_{b_j}(g_{j-1}, g_j) c_2^{g_N}`.
//! Gaps are truncated at `K`, and `K` is doubled until the result stabilizes.
//!
//! For the log-gamma model at width one the three free values are
//! integrated numerically.

use serde::{Deserialize, Serialize};

use stripgibbs_core::quad::integrate_line_rel;
use stripgibbs_core::{log_gamma_weight, DownRightPath, Error, ModelKind, ModelParams, Result};

/// A partition function with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionEstimate {
    /// Estimated value.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    /// Final gap truncation (geometric) or zero (log-gamma).
    pub trunc: usize,
}

/// Largest gap truncation tried before giving up.
pub const MAX_TRUNC: usize = 1 << 13;

fn transfer(b: f64, g: usize, h: usize) -> f64 {
    let d = g.abs_diff(h) as i32;
    let m = g.min(h) as i32;
    b.powi(d) * (1.0 - b.powi(2 * m + 2)) / (1.0 - b * b)
}

fn z_truncated(labels: &[f64], c1: f64, c2: f64, k: usize) -> f64 {
    let mut vec: Vec<f64> = (0..=k).map(|g| c1.powi(g as i32)).collect();
    for &b in labels {
        let next: Vec<f64> = (0..=k)
            .map(|h| (0..=k).map(|g| vec[g] * transfer(b, g, h)).sum())
            .collect();
        vec = next;
    }
    vec.iter()
        .enumerate()
        .map(|(g, x)| x * c2.powi(g as i32))
        .sum()
}

fn fan_region(params: &ModelParams) -> Result<()> {
    if !params.fan_region {
        return Err(Error::ShockRegion);
    }
    Ok(())
}

/// Geometric partition function on `path`, to relative tolerance `tol`.
pub fn partition_z_geom(
    params: &ModelParams,
    path: &DownRightPath,
    tol: f64,
) -> Result<PartitionEstimate> {
    if params.model != ModelKind::GeometricLpp {
        return Err(Error::ParamDomain("geometric parameters expected".into()));
    }
    fan_region(params)?;
    let labels = path.edge_labels(params);
    let mut k = 32;
    let mut z = z_truncated(&labels, params.left, params.right, k);
    while k < MAX_TRUNC {
        let z2 = z_truncated(&labels, params.left, params.right, 2 * k);
        k *= 2;
        let err = (z2 - z).abs();
        z = z2;
        if err <= tol * z {
            return Ok(PartitionEstimate {
                value: z,
                error: err,
                trunc: k,
            });
        }
    }
    Err(Error::TruncationTooSmall {
        bound: k as f64,
        tol,
    })
}

/// The bound `(1 - c1 c2)^{-1} prod_i (1 - a_i c1)^{-1} (1 - a_i c2)^{-1} prod_{i<j} (1 - a_i a_j)^{-1}`.
pub fn schur_upper_bound(params: &ModelParams) -> f64 {
    let a = &params.bulk;
    let (c1, c2) = (params.left, params.right);
    let mut inv = 1.0 - c1 * c2;
    for (i, &ai) in a.iter().enumerate() {
        inv *= (1.0 - ai * c1) * (1.0 - ai * c2);
        for &aj in &a[i + 1..] {
            inv *= 1.0 - ai * aj;
        }
    }
    1.0 / inv
}

/// Log-gamma partition function for `N = 1` on the horizontal path.
///
/// With `lambda_1^(0) = 0`, `s = lambda_2^(1)`, `y = lambda_2^(0)` and
/// `x = lambda_1^(1)`, the integrand factorizes given `s`:
/// `Z = int ds e^{v s - e^{s}} (int dy e^{u y} f_alpha(s - y)) (int dx f_alpha(x) e^{-v x})`.
pub fn partition_z_lg_width_one(params: &ModelParams, rel_tol: f64) -> Result<PartitionEstimate> {
    if params.model != ModelKind::LogGamma || params.n() != 1 {
        return Err(Error::ParamDomain(
            "log-gamma parameters of width one expected".into(),
        ));
    }
    fan_region(params)?;
    let (alpha, u, v) = (params.bulk[0], params.left, params.right);
    let inner_tol = rel_tol * 1e-2;
    let x_part = integrate_line_rel(
        |x| (log_gamma_weight(alpha, x) - v * x).exp(),
        0.0,
        inner_tol,
    )?
    .0;
    let outer = |s: f64| {
        let y_part = integrate_line_rel(
            |y| (u * y + log_gamma_weight(alpha, s - y)).exp(),
            s,
            inner_tol,
        )
        .map(|r| r.0)
        .unwrap_or(f64::NAN);
        (v * s - s.exp()).exp() * y_part
    };
    let (z, err) = integrate_line_rel(outer, 0.0, rel_tol * 1e-1)?;
    Ok(PartitionEstimate {
        value: z * x_part,
        error: err * x_part,
        trunc: 0,
    })
}
