//! Closed-form density and normalization of the log-gamma stationary pair
//! for small strip widths.

use stripgibbs_core::dist::log_inv_gamma_logpdf;
use stripgibbs_core::quad::integrate_line_rel;
use stripgibbs_core::special::ln_gamma;
use stripgibbs_core::{Error, ModelKind, ModelParams, Result};

use crate::walks::{log_v_lgg, WalkPair};

fn require_lg(params: &ModelParams) -> Result<()> {
    if params.model != ModelKind::LogGamma {
        return Err(Error::ParamDomain("expected log-gamma parameters".into()));
    }
    Ok(())
}

/// Unnormalized log density `log V(L) + log P(L)` of the reweighted walk pair,
/// where `P` is the law of two independent walks with `log Gamma^{-1}(b_j)` increments.
pub fn log_pdf_lgg_small_n(params: &ModelParams, walks: &WalkPair<f64>) -> Result<f64> {
    require_lg(params)?;
    if walks.n() != params.n() {
        return Err(Error::ParamDomain(format!(
            "walks have width {}, parameters {}",
            walks.n(),
            params.n()
        )));
    }
    let x1 = walks.increments1();
    let x2 = walks.increments2();
    let lp: f64 = params
        .bulk
        .iter()
        .zip(x1.iter().zip(&x2))
        .map(|(&b, (&y1, &y2))| log_inv_gamma_logpdf(b, y1) + log_inv_gamma_logpdf(b, y2))
        .sum();
    Ok(log_v_lgg(walks, params.left, params.right) + lp)
}

/// Width-one normalization `E[V]` by nested quadrature, together with the
/// closed form `Gamma(alpha + v) Gamma(alpha + u) / Gamma(alpha)^2`.
///
/// Multiplying both by `Gamma(u + v) Gamma(alpha)^2` gives the two-layer
/// partition function on the horizontal path in the fan region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthOneNormalization {
    /// Quadrature value of `E[V]`.
    pub quadrature: f64,
    /// Closed-form value of `E[V]`.
    pub closed_form: f64,
}

impl WidthOneNormalization {
    /// Relative discrepancy.
    pub fn rel_err(&self) -> f64 {
        ((self.quadrature - self.closed_form) / self.closed_form).abs()
    }
}

/// Computes [`WidthOneNormalization`]; requires `N = 1`, `alpha + u > 0` and `alpha + v > 0`.
pub fn normalization_lgg_width_one(
    params: &ModelParams,
    rel_tol: f64,
) -> Result<WidthOneNormalization> {
    require_lg(params)?;
    if params.n() != 1 {
        return Err(Error::ParamDomain(format!(
            "width-one normalization needs N = 1, got {}",
            params.n()
        )));
    }
    let (a, u, v) = (params.bulk[0], params.left, params.right);
    if !(a + u > 0.0 && a + v > 0.0) {
        return Err(Error::ParamDomain(format!(
            "need alpha + u > 0 and alpha + v > 0, got {a}, {u}, {v}"
        )));
    }
    let closed_form = (ln_gamma(a + v) + ln_gamma(a + u) - 2.0 * ln_gamma(a)).exp();
    let log_f = |x: f64, y: f64| {
        let w = WalkPair {
            l1: vec![x],
            l2: vec![y],
        };
        log_v_lgg(&w, u, v) + log_inv_gamma_logpdf(a, x) + log_inv_gamma_logpdf(a, y)
    };
    // centers at the modes of the tilted increment laws
    let cx = -(a + v).ln();
    let cy = -(a + u).ln();
    let inner = |x: f64| {
        integrate_line_rel(|y| log_f(x, y).exp(), cy, rel_tol * 0.1)
            .map(|r| r.0)
            .unwrap_or(f64::NAN)
    };
    let (quadrature, _) = integrate_line_rel(inner, cx, rel_tol)?;
    Ok(WidthOneNormalization {
        quadrature,
        closed_form,
    })
}

/// `log Z` of the two-layer log-gamma model at width one in the fan region.
pub fn log_partition_lgg_width_one(params: &ModelParams) -> Result<f64> {
    require_lg(params)?;
    if !params.fan_region {
        return Err(Error::ShockRegion);
    }
    let (a, u, v) = (params.bulk[0], params.left, params.right);
    Ok(ln_gamma(u + v) + ln_gamma(a + v) + ln_gamma(a + u))
}
