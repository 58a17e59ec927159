//! Truncated operators `M^->_x[a]`, `M^v_x[a]`, the shifts `S`, `T` and the
//! boundary vectors.

use nalgebra::{DMatrix, DVector, Scalar};
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use stripgibbs_core::{Error, Result, Step};

/// Which operator a truncated matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorLabel {
    /// `M^->_x[a]`.
    Right(u64),
    /// `M^v_x[a]`.
    Down(u64),
    /// Lower shift `S(n, n') = 1{n = n' + 1}`.
    LowerShift,
    /// Upper shift `T(n, n') = 1{n' = n + 1}`.
    UpperShift,
    /// Anything obtained by arithmetic on the above.
    Derived,
}

/// An operator on sequences indexed by `Z_{>=0}`, truncated to `[0, K)^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator<T: Scalar> {
    /// Entries on `[0, K)^2`.
    pub entries: DMatrix<T>,
    /// Truncation size `K`.
    pub trunc_k: usize,
    /// What the matrix represents.
    pub label: OperatorLabel,
}

/// A boundary vector `n -> c^n`, truncated to `[0, K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryVector<T: Scalar> {
    /// Entries on `[0, K)`.
    pub entries: DVector<T>,
}

fn pow<T: Num + Clone>(a: &T, k: usize) -> T {
    num_traits::pow(a.clone(), k)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ParamDomain("truncation size K must be >= 1".into()));
    }
    Ok(())
}

/// `M^->_x[a]` (`dir = Step::Right`) or `M^v_x[a]` (`dir = Step::Down`) on `[0, K)^2`.
pub fn build_m<T: Scalar + Num + Clone + PartialOrd>(
    x: u64,
    a: &T,
    k: usize,
    dir: Step,
) -> Result<TruncatedOperator<T>> {
    check_k(k)?;
    if !(*a > T::zero() && *a < T::one()) {
        return Err(Error::ParamDomain(
            "operator parameter must lie in (0, 1)".into(),
        ));
    }
    let x = x as usize;
    let right = DMatrix::from_fn(k, k, |n, np| {
        if np >= x && x + n >= np {
            pow(a, 2 * x + n - np)
        } else {
            T::zero()
        }
    });
    Ok(match dir {
        Step::Right => TruncatedOperator {
            entries: right,
            trunc_k: k,
            label: OperatorLabel::Right(x as u64),
        },
        Step::Down => TruncatedOperator {
            entries: right.transpose(),
            trunc_k: k,
            label: OperatorLabel::Down(x as u64),
        },
    })
}

/// The lower shift `S` on `[0, K)^2`.
pub fn lower_shift<T: Scalar + Zero + One>(k: usize) -> TruncatedOperator<T> {
    let entries = DMatrix::from_fn(k, k, |n, np| if n == np + 1 { T::one() } else { T::zero() });
    TruncatedOperator {
        entries,
        trunc_k: k,
        label: OperatorLabel::LowerShift,
    }
}

/// The upper shift `T` on `[0, K)^2`.
pub fn upper_shift<T: Scalar + Zero + One>(k: usize) -> TruncatedOperator<T> {
    let entries = DMatrix::from_fn(k, k, |n, np| if np == n + 1 { T::one() } else { T::zero() });
    TruncatedOperator {
        entries,
        trunc_k: k,
        label: OperatorLabel::UpperShift,
    }
}

/// The vector `n -> c^n` on `[0, K)`.
pub fn boundary_vector<T: Scalar + Num + Clone>(c: &T, k: usize) -> BoundaryVector<T> {
    BoundaryVector {
        entries: DVector::from_fn(k, |n, _| pow(c, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use stripgibbs_core::rational::ratio;
    use stripgibbs_core::Rational;

    #[test]
    fn x_zero_is_lower_triangular_toeplitz() {
        let a = ratio(1, 3);
        let m = build_m(0, &a, 8, Step::Right).unwrap();
        for n in 0..8 {
            for np in 0..8 {
                let expect = if n >= np {
                    pow(&a, n - np)
                } else {
                    Rational::zero()
                };
                assert_eq!(m.entries[(n, np)], expect);
            }
        }
    }

    #[test]
    fn down_is_transpose_of_right() {
        for x in 0..4 {
            let r = build_m(x, &ratio(2, 7), 10, Step::Right).unwrap();
            let d = build_m(x, &ratio(2, 7), 10, Step::Down).unwrap();
            assert_eq!(d.entries, r.entries.transpose());
        }
    }

    #[test]
    fn toeplitz_factorization_is_exact_on_the_leading_block() {
        // M^->_x[a] = (sum_k a^k S^k) a^x T^x on the leading (K - x) block
        let k = 12;
        let a = ratio(2, 5);
        let s = lower_shift::<Rational>(k).entries;
        let t = upper_shift::<Rational>(k).entries;
        let mut geo = DMatrix::<Rational>::identity(k, k);
        let mut sp = DMatrix::<Rational>::identity(k, k);
        for j in 1..k {
            sp = &sp * &s;
            geo += &sp * pow(&a, j);
        }
        for x in 0..5usize {
            let mut tx = DMatrix::<Rational>::identity(k, k);
            for _ in 0..x {
                tx = &tx * &t;
            }
            let prod = &geo * (&tx * pow(&a, x));
            let m = build_m(x as u64, &a, k, Step::Right).unwrap().entries;
            let b = k - x;
            assert_eq!(prod.view((0, 0), (b, b)), m.view((0, 0), (b, b)), "x = {x}");
        }
    }

    #[test]
    fn eigenrelations_hold_away_from_the_cut() {
        let k = 10;
        let (c1, c2) = (ratio(4, 5), ratio(3, 2));
        let w = boundary_vector(&c1, k).entries;
        let v = boundary_vector(&c2, k).entries;
        let ws = w.transpose() * lower_shift::<Rational>(k).entries;
        let tv = upper_shift::<Rational>(k).entries * &v;
        for n in 0..k - 1 {
            assert_eq!(ws[n], &c1 * &w[n]);
            assert_eq!(tv[n], &c2 * &v[n]);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_m(1, &1.5, 4, Step::Right).is_err());
        assert!(build_m(1, &0.5, 0, Step::Right).is_err());
    }
}
