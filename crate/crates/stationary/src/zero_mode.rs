//! The zero mode `Delta = lambda_1^(0) - lambda_2^(0)`.
//!
//! Given the walks, the two-layer weight depends on `Delta` through
//! `(c1 c2)^Delta` on `Delta >= max_j (L_2(j) - L_1(j-1))` (geometric) and
//! through `e^{-(u+v) Delta - e^{-Delta} S}` with `S = sum_j e^{L_2(j) - L_1(j-1)}`
//! (log-gamma). Hence `Delta - max ~ Geom(c1 c2)` and `e^{-Delta} S ~ Gamma(u+v)`,
//! both proper only when `c1 c2 < 1` resp. `u + v > 0`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use stripgibbs_core::quad::integrate_line_rel;
use stripgibbs_core::rational::pow_int;
use stripgibbs_core::special::ln_gamma;
use stripgibbs_core::{Error, GeomSampler, Rational, Result};

use crate::walks::{log_gap_sum, max_gap, WalkPair};

/// A sampled zero mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMode<T> {
    /// `Delta = lambda_1^(0) - lambda_2^(0)`.
    pub delta: T,
}

/// `Delta` given the walks, geometric model.
pub fn sample_delta_lpp<R: Rng + ?Sized>(
    walks: &WalkPair<i64>,
    c1: f64,
    c2: f64,
    rng: &mut R,
) -> Result<ZeroMode<i64>> {
    let q = c1 * c2;
    if !(q < 1.0) {
        return Err(Error::ShockRegion);
    }
    Ok(ZeroMode {
        delta: max_gap(walks) + GeomSampler::new(q)?.sample(rng) as i64,
    })
}

/// `Delta` given the walks, log-gamma model.
pub fn sample_delta_lg<R: Rng + ?Sized>(
    walks: &WalkPair<f64>,
    u: f64,
    v: f64,
    rng: &mut R,
) -> Result<ZeroMode<f64>> {
    if !(u + v > 0.0) {
        return Err(Error::ShockRegion);
    }
    let g: f64 = Gamma::new(u + v, 1.0)
        .map_err(|e| Error::ParamDomain(e.to_string()))?
        .sample(rng);
    Ok(ZeroMode {
        delta: log_gap_sum(walks) - g.ln(),
    })
}

/// Relative error of `int e^{-theta x - e^{-x} s} dx = Gamma(theta) s^{-theta}` by quadrature.
pub fn gamma_identity_residual(theta: f64, s: f64) -> Result<f64> {
    if !(theta > 0.0 && s > 0.0) {
        return Err(Error::ParamDomain(format!(
            "need theta > 0 and s > 0, got {theta}, {s}"
        )));
    }
    let log_closed = ln_gamma(theta) - theta * s.ln();
    let center = s.ln() - theta.ln();
    let (i, _) = integrate_line_rel(
        |x| (-theta * x - (-x).exp() * s - log_closed).exp(),
        center,
        1e-12,
    )?;
    Ok((i - 1.0).abs())
}

/// The two-layer weight as a function of `(Delta, L)` on a horizontal path
/// with edge labels `labels`, in exact arithmetic.
pub fn hat_weight_lpp(
    delta: i64,
    walks: &WalkPair<i64>,
    labels: &[Rational],
    c1: &Rational,
    c2: &Rational,
) -> Rational {
    let n = walks.n();
    for j in 1..=n {
        let ordered = walks.l1_at(j) >= walks.l1_at(j - 1) && walks.l2_at(j) >= walks.l2_at(j - 1);
        if !ordered || walks.l1_at(j - 1) - walks.l2_at(j) + delta < 0 {
            return Rational::zero();
        }
    }
    if delta < 0 {
        return Rational::zero();
    }
    let mut w = pow_int(&(c1 * c2), delta) * pow_int(c2, walks.l1_at(n) - walks.l2_at(n));
    for j in 1..=n {
        let b = &labels[j - 1];
        w *= pow_int(
            b,
            walks.l1_at(j) - walks.l1_at(j - 1) + walks.l2_at(j) - walks.l2_at(j - 1),
        );
    }
    w
}

/// `sum_Delta hat_weight(Delta, L) (1 - c1 c2) prod_j (1 - b_j)^2`, which
/// equals `V(L) P_GRW(L)` when `c1 c2 < 1`; summed in closed form.
pub fn summed_hat_weight_lpp(
    walks: &WalkPair<i64>,
    labels: &[Rational],
    c1: &Rational,
    c2: &Rational,
) -> Rational {
    let q = c1 * c2;
    let lo = max_gap(walks).max(0);
    let mut norm = Rational::one() - &q;
    for b in labels {
        norm *= (Rational::one() - b) * (Rational::one() - b);
    }
    // sum_{Delta >= lo} q^Delta = q^lo / (1 - q)
    hat_weight_lpp(lo, walks, labels, c1, c2) / (Rational::one() - &q) * norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use stripgibbs_core::rational::ratio;
    use stripgibbs_core::RngStream;

    #[test]
    fn geometric_delta_law() {
        let w = WalkPair {
            l1: vec![0, 1],
            l2: vec![4, 5],
        };
        let mut rng = RngStream::new(1, 0).rng();
        let n = 100_000;
        let at_max = (0..n)
            .filter(|_| sample_delta_lpp(&w, 0.5, 1.0, &mut rng).unwrap().delta == 5)
            .count();
        let p = at_max as f64 / n as f64;
        assert!((p - 0.5).abs() < 5.0 * (0.25 / n as f64).sqrt(), "{p}");
    }

    #[test]
    fn lg_delta_law() {
        let w = WalkPair {
            l1: vec![0.0],
            l2: vec![0.0],
        };
        let mut rng = RngStream::new(2, 0).rng();
        let n = 100_000;
        let pos = (0..n)
            .filter(|_| sample_delta_lg(&w, 0.4, 0.6, &mut rng).unwrap().delta > 0.0)
            .count();
        let p = pos as f64 / n as f64;
        let expect = 1.0 - (-1.0f64).exp();
        assert!(
            (p - expect).abs() < 5.0 * (expect * (1.0 - expect) / n as f64).sqrt(),
            "{p}"
        );
    }

    #[test]
    fn shock_region_rejected() {
        let w = WalkPair {
            l1: vec![0.0],
            l2: vec![0.0],
        };
        let mut rng = RngStream::new(2, 0).rng();
        assert_eq!(
            sample_delta_lg(&w, -0.9, 0.4, &mut rng),
            Err(Error::ShockRegion)
        );
        let wi = WalkPair {
            l1: vec![0],
            l2: vec![0],
        };
        assert_eq!(
            sample_delta_lpp(&wi, 1.5, 1.0, &mut rng),
            Err(Error::ShockRegion)
        );
    }

    #[test]
    fn gamma_identity_holds() {
        for (t, s) in [(1.0, 1.0), (0.3, 5.0), (2.5, 0.01)] {
            assert!(gamma_identity_residual(t, s).unwrap() < 1e-8);
        }
    }

    #[test]
    fn summed_hat_weight_is_reweighted_walk_law() {
        let labels = [ratio(1, 3), ratio(1, 2)];
        let (c1, c2) = (ratio(3, 4), ratio(6, 5));
        for (x1, x2) in [([0, 0], [0, 0]), ([2, 1], [0, 3]), ([0, 4], [5, 0])] {
            let w = WalkPair::from_increments(&x1, &x2);
            let v = pow_int(&(&c1 * &c2), max_gap(&w)) * pow_int(&c2, w.l1_at(2) - w.l2_at(2));
            let mut p = Rational::one();
            for j in 0..2 {
                let b = &labels[j];
                p *= (Rational::one() - b) * (Rational::one() - b) * pow_int(b, x1[j] + x2[j]);
            }
            assert_eq!(summed_hat_weight_lpp(&w, &labels, &c1, &c2), v * p);
        }
    }
}
