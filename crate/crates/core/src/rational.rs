//! Helpers for exact rational arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `x^k` for `k >= 0`, with `0^0 = 1`.
pub fn pow_nonneg(x: &Rational, k: i64) -> Rational {
    assert!(k >= 0, "negative exponent {k}");
    num_traits::pow(x.clone(), k as usize)
}

/// `x^k` for any integer `k`; `x` must be nonzero when `k < 0`.
pub fn pow_int(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        pow_nonneg(x, k)
    } else {
        Rational::one() / pow_nonneg(x, -k)
    }
}

/// `sum_{k=0}^{n-1} x^k`, with the empty sum equal to zero.
pub fn geometric_sum(x: &Rational, n: i64) -> Rational {
    let mut s = Rational::zero();
    let mut t = Rational::one();
    for _ in 0..n.max(0) {
        s += &t;
        t *= x;
    }
    s
}

/// Nearest `f64` to a rational.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// The rational with value exactly equal to a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_sums() {
        let h = ratio(1, 2);
        assert_eq!(pow_int(&h, -3), ratio(8, 1));
        assert_eq!(pow_nonneg(&Rational::zero(), 0), Rational::one());
        assert_eq!(geometric_sum(&h, 3), ratio(7, 4));
        assert_eq!(from_f64(0.25), ratio(1, 4));
        assert_eq!(to_f64(&ratio(3, 4)), 0.75);
    }
}
