//! Log-domain arithmetic.

use crate::scalar::Real;

/// `log f_theta(x) = -theta x - e^{-x}`, the unnormalized log-inverse-gamma log-density.
///
/// The result is `-inf` once `e^{-x}` overflows, which is the correct limit.
#[inline]
pub fn log_gamma_weight<T: Real>(theta: T, x: T) -> T {
    -theta * x - (-x).exp()
}

/// `log(e^a + e^b)` with max-factoring. `-inf` inputs are handled.
#[inline]
pub fn logaddexp<T: Real>(a: T, b: T) -> T {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == T::neg_infinity() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `log sum_i e^{x_i}`; `-inf` for an empty slice.
pub fn logsumexp<T: Real>(xs: &[T]) -> T {
    let m = xs.iter().copied().fold(T::neg_infinity(), T::max);
    if m == T::neg_infinity() || m == T::infinity() {
        return m;
    }
    m + xs
        .iter()
        .map(|&x| (x - m).exp())
        .fold(T::zero(), |a, b| a + b)
        .ln()
}
