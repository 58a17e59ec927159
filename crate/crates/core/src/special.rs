//! Special functions: log-gamma, digamma and trigamma.

use crate::error::{Error, Result};

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SHIFT: f64 = 12.0;

/// The digamma function `psi(z) = d/dz ln Gamma(z)` for `z > 0`.
///
/// Upward recurrence `psi(z) = psi(z + 1) - 1/z` until `z >= 12`, then the
/// asymptotic series. Absolute error is below `1e-13` on `(0, inf)`.
pub fn digamma(mut z: f64) -> f64 {
    let mut acc = 0.0;
    while z < SHIFT {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let r = 1.0 / (z * z);
    let series = r
        * (-1.0 / 12.0
            + r * (1.0 / 120.0
                + r * (-1.0 / 252.0
                    + r * (1.0 / 240.0
                        + r * (-1.0 / 132.0 + r * (691.0 / 32760.0 + r * (-1.0 / 12.0)))))));
    acc + z.ln() - 0.5 / z + series
}

/// The trigamma function `psi_1(z) = d/dz psi(z)` for `z > 0`.
pub fn trigamma(mut z: f64) -> f64 {
    let mut acc = 0.0;
    while z < SHIFT {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let r = 1.0 / (z * z);
    let series = (1.0 / z)
        * (1.0
            + 0.5 / z
            + r * (1.0 / 6.0
                + r * (-1.0 / 30.0
                    + r * (1.0 / 42.0
                        + r * (-1.0 / 30.0
                            + r * (5.0 / 66.0 + r * (-691.0 / 2730.0 + r * (7.0 / 6.0))))))));
    acc + series
}

/// [`digamma`] with a domain check.
pub fn checked_digamma(z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::ParamDomain(format!(
            "digamma argument {z} must be positive"
        )));
    }
    Ok(digamma(z))
}

/// [`trigamma`] with a domain check.
pub fn checked_trigamma(z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::ParamDomain(format!(
            "trigamma argument {z} must be positive"
        )));
    }
    Ok(trigamma(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: `psi(z) = -gamma + sum_{k>=0} (1/(k+1) - 1/(k+z))`,
    /// summed to a large cutoff with an Euler-Maclaurin tail.
    fn digamma_series(z: f64) -> f64 {
        let k_max = 200_000usize;
        let mut s = 0.0;
        for k in (0..k_max).rev() {
            let k = k as f64;
            s += 1.0 / (k + 1.0) - 1.0 / (k + z);
        }
        let k = k_max as f64;
        // tail of sum 1/(k+1) - 1/(k+z) for k >= K is about (z - 1) / (K + z/2)
        s += (z - 1.0) / (k + 0.5 * (z + 1.0) - 0.5);
        -EULER_GAMMA + s
    }

    fn trigamma_series(z: f64) -> f64 {
        let k_max = 200_000usize;
        let mut s = 0.0;
        for k in (0..k_max).rev() {
            let t = k as f64 + z;
            s += 1.0 / (t * t);
        }
        let t = k_max as f64 + z;
        s + 1.0 / t + 0.5 / (t * t) + 1.0 / (6.0 * t * t * t)
    }

    #[test]
    fn digamma_at_one() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-13);
    }

    #[test]
    fn trigamma_at_one() {
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((trigamma(1.0) - pi2_6).abs() < 1e-13);
    }

    #[test]
    fn agrees_with_series_oracles() {
        for z in [0.1, 0.5, 1.7, 3.0, 10.5, 25.0] {
            assert!((digamma(z) - digamma_series(z)).abs() < 1e-9, "psi({z})");
            assert!(
                (trigamma(z) - trigamma_series(z)).abs() < 1e-12,
                "psi1({z})"
            );
        }
    }

    #[test]
    fn recurrences_hold() {
        for z in [0.05, 0.3, 1.0, 2.5, 11.9, 12.1, 40.0] {
            assert!((digamma(z + 1.0) - digamma(z) - 1.0 / z).abs() < 1e-13 * (1.0 + 1.0 / z));
            assert!(
                (trigamma(z) - trigamma(z + 1.0) - 1.0 / (z * z)).abs()
                    < 1e-13 * (1.0 + 1.0 / (z * z))
            );
        }
    }

    #[test]
    fn half_integer_closed_form() {
        let v = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((digamma(0.5) - v).abs() < 1e-13);
        assert!((trigamma(0.5) - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn domain() {
        assert!(checked_digamma(0.0).is_err());
        assert!(checked_trigamma(-1.0).is_err());
        assert!(checked_digamma(2.0).is_ok());
    }
}
