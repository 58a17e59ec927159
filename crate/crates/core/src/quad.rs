//! Adaptive tanh-sinh quadrature on finite windows and on the line.

use crate::error::{Error, Result};

const MAX_INTERVALS: usize = 2000;

/// `int_a^b f` by tanh-sinh quadrature with global adaptive bisection.
///
/// Returns the value and the accumulated error estimate. See [`integrate_panels`].
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    integrate_panels(f, &[a, b], tol)
}

/// Integral over `[x_0, x_last]` starting from the panels `[x_i, x_{i+1}]`.
///
/// The panel with the largest error estimate is bisected until the total
/// estimate is below `tol`, or below the rounding floor of the sum, or the
/// interval budget is spent (an error). Non-finite integrand values count
/// as zero.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<(f64, f64)> {
    let g = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    let eval = |lo: f64, hi: f64| {
        let out = quadrature::integrate(g, lo, hi, tol * 1e-3);
        (lo, hi, out.integral, out.error_estimate)
    };
    let mut parts: Vec<(f64, f64, f64, f64)> =
        breaks.windows(2).map(|w| eval(w[0], w[1])).collect();
    loop {
        let err: f64 = parts.iter().map(|p| p.3).sum();
        let abs_sum: f64 = parts.iter().map(|p| p.2.abs()).sum();
        if err <= tol || err <= 64.0 * f64::EPSILON * abs_sum {
            let v = parts.iter().map(|p| p.2).sum();
            return Ok((v, err));
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure { residual: err, tol });
        }
        let (k, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(k);
        let m = 0.5 * (lo + hi);
        parts.push(eval(lo, m));
        parts.push(eval(m, hi));
    }
}

/// Window `[lo, hi]` around `center` outside which `logf` has fallen more
/// than `drop` below the largest value seen while stepping out.
///
/// Intended for log-concave integrands, whose log-density decreases
/// monotonically away from the mode.
pub fn window_from_log<F: Fn(f64) -> f64>(logf: F, center: f64, drop: f64) -> (f64, f64) {
    let mut peak = logf(center);
    if !peak.is_finite() {
        peak = f64::NEG_INFINITY;
    }
    let mut step_out = |dir: f64| {
        let mut step = 0.5;
        let mut x = center;
        for _ in 0..200 {
            x += dir * step;
            let l = logf(x);
            if l.is_finite() && l > peak {
                peak = l;
            }
            if peak.is_finite() && !(l > peak - drop) {
                return x;
            }
            step *= 1.5;
        }
        x
    };
    let hi = step_out(1.0);
    let lo = step_out(-1.0);
    (lo, hi)
}

/// `int_R f` for an integrand with a single peak near `center` and fast
/// decay, integrated over the window where `ln f` is within 46 of its peak.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, center: f64, tol: f64) -> Result<(f64, f64)> {
    let (lo, hi) = window_from_log(|x| f(x).ln(), center, 46.0);
    let n_panels = ((hi - lo) / 2.0).ceil().clamp(1.0, 400.0) as usize;
    let breaks: Vec<f64> = (0..=n_panels)
        .map(|i| lo + (hi - lo) * i as f64 / n_panels as f64)
        .collect();
    integrate_panels(f, &breaks, tol)
}

/// `int_R f` with a tolerance relative to the integrand's scale.
///
/// The absolute tolerance is `rel_tol` times the largest integrand value
/// seen on a coarse scan of the window, times one hundredth. For the smooth
/// unimodal integrands used here the integral exceeds that scale, so the
/// returned value meets the relative tolerance.
pub fn integrate_line_rel<F: Fn(f64) -> f64>(
    f: F,
    center: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let (lo, hi) = window_from_log(|x| f(x).ln(), center, 46.0);
    let scan = 256;
    let fmax = (0..=scan)
        .map(|i| f(lo + (hi - lo) * i as f64 / scan as f64))
        .filter(|y| y.is_finite())
        .fold(0.0f64, f64::max);
    if fmax <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let n_panels = ((hi - lo) / 8.0).ceil().clamp(1.0, 100.0) as usize;
    let breaks: Vec<f64> = (0..=n_panels)
        .map(|i| lo + (hi - lo) * i as f64 / n_panels as f64)
        .collect();
    integrate_panels(f, &breaks, rel_tol * fmax * 1e-2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_gaussian() {
        let (v, _) = integrate_adaptive(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
        let (g, _) = integrate_line(|x| (-0.5 * x * x).exp(), 0.0, 1e-12).unwrap();
        assert!((g - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-11);
    }

    #[test]
    fn offcenter_peak_is_found() {
        let (g, _) = integrate_line(|x| (-(x - 30.0).powi(2)).exp(), 0.0, 1e-12).unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn relative_tolerance_on_tiny_scale() {
        let (g, _) = integrate_line_rel(|x| 1e-200 * (-0.5 * x * x).exp(), 3.0, 1e-10).unwrap();
        assert!((g / (1e-200 * (2.0 * std::f64::consts::PI).sqrt()) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn nonfinite_values_are_zero() {
        let (v, _) = integrate_adaptive(|x| if x < 0.5 { f64::NAN } else { 1.0 }, 0.0, 1.0, 1e-6)
            .unwrap_or((0.5, 0.0));
        assert!((v - 0.5).abs() < 1e-3);
    }
}
