//! Exact enumeration of the geometric stationary law for small widths.
//!
//! Both walks' increments are enumerated on the box `[0, M]^N`, and
//! `V * P_GRW` is summed over `L_2` for every `L_1`. Because
//! `V <= max(1, c2)^{L_1(N)} max(1, c1)^{L_2(N)}`, the mass outside the box is
//! at most
//! `prod_j (1-b_j)^2 / ((1 - b_j C1)(1 - b_j C2)) * sum_j ((b_j C2)^{M+1} + (b_j C1)^{M+1})`
//! with `C_i = max(1, c_i)`, a rigorous bound computed in the same arithmetic.

use std::collections::BTreeMap;

use num_traits::Num;
use serde::Serialize;

use stripgibbs_core::{Error, Result};

/// Largest box side tried.
pub const MAX_BOX: i64 = 400;

/// The `L_1` marginal on a truncated box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactPmf<T> {
    /// `L_1` increments mapped to probabilities normalized by the box mass.
    /// Each entry is within `2 * tail_rel` of the untruncated probability.
    pub pmf: BTreeMap<Vec<i64>, T>,
    /// `sum_{box} V P_GRW`.
    pub mass: T,
    /// Upper bound on the mass outside the box.
    pub tail: T,
    /// `tail / mass`.
    pub tail_rel: T,
    /// Box side `M`.
    pub trunc: i64,
}

fn pow_z<T: Num + Clone>(x: &T, k: i64) -> T {
    let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
    if k >= 0 {
        p
    } else {
        T::one() / p
    }
}

fn max_t<T: PartialOrd + Clone + Num>(a: &T) -> T {
    if *a > T::one() {
        a.clone()
    } else {
        T::one()
    }
}

fn tail_bound<T: Num + Clone + PartialOrd>(labels: &[T], c1: &T, c2: &T, m: i64) -> T {
    let (k1, k2) = (max_t(c1), max_t(c2));
    let mut k = T::one();
    let mut s = T::zero();
    for b in labels {
        let (q1, q2) = (b.clone() * k1.clone(), b.clone() * k2.clone());
        let one_b = T::one() - b.clone();
        k = k * one_b.clone() * one_b / ((T::one() - q1.clone()) * (T::one() - q2.clone()));
        s = s + pow_z(&q1, m + 1) + pow_z(&q2, m + 1);
    }
    k * s
}

fn for_each_point<F: FnMut(&[i64])>(n: usize, m: i64, mut f: F) {
    let mut x = vec![0i64; n];
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            x[i] += 1;
            if x[i] <= m {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn enumerate<T: Num + Clone + PartialOrd>(
    labels: &[T],
    c1: &T,
    c2: &T,
    m: i64,
) -> (BTreeMap<Vec<i64>, T>, T) {
    let n = labels.len();
    let c12 = c1.clone() * c2.clone();
    let base: T = labels.iter().fold(T::one(), |acc, b| {
        let o = T::one() - b.clone();
        acc * o.clone() * o
    });
    // powers b_j^k for k in 0..=M
    let bp: Vec<Vec<T>> = labels
        .iter()
        .map(|b| (0..=m).map(|k| pow_z(b, k)).collect())
        .collect();
    let span = n as i64 * m;
    let c12p: Vec<T> = (-span..=span).map(|k| pow_z(&c12, k)).collect();
    let c2p: Vec<T> = (-span..=span).map(|k| pow_z(c2, k)).collect();
    // second walks with their label weights, shared by every first walk
    let mut second: Vec<(Vec<i64>, T)> = Vec::new();
    for_each_point(n, m, |x2| {
        let mut l2 = Vec::with_capacity(n);
        let mut s = 0;
        let mut p = base.clone();
        for j in 0..n {
            s += x2[j];
            l2.push(s);
            p = p * bp[j][x2[j] as usize].clone();
        }
        second.push((l2, p));
    });
    let mut out = BTreeMap::new();
    let mut mass = T::zero();
    for_each_point(n, m, |x1| {
        let mut prev = Vec::with_capacity(n);
        let mut s = 0;
        let mut p1 = T::one();
        for j in 0..n {
            prev.push(s);
            s += x1[j];
            p1 = p1 * bp[j][x1[j] as usize].clone();
        }
        let l1_end = s;
        let mut w = T::zero();
        for (l2, p2) in &second {
            let mx = (0..n).map(|j| l2[j] - prev[j]).max().expect("N >= 1");
            let v = c12p[(mx + span) as usize].clone()
                * c2p[(l1_end - l2[n - 1] + span) as usize].clone();
            w = w + v * p2.clone();
        }
        let w = w * p1;
        mass = mass.clone() + w.clone();
        out.insert(x1.to_vec(), w);
    });
    (out, mass)
}

/// The `L_1` marginal of the geometric stationary law with edge labels
/// `labels`, with a box large enough that `tail / mass <= tol`.
pub fn exact_pmf_lpp_small_n<T: Num + Clone + PartialOrd>(
    labels: &[T],
    c1: &T,
    c2: &T,
    tol: &T,
) -> Result<ExactPmf<T>> {
    let n = labels.len();
    if n == 0 || n > 4 {
        return Err(Error::ParamDomain(format!(
            "exact enumeration supports 1 <= N <= 4, got {n}"
        )));
    }
    let mut m = 8;
    let (_, mass0) = enumerate(labels, c1, c2, m);
    while tail_bound(labels, c1, c2, m) > tol.clone() * mass0.clone() {
        m += 4;
        if m > MAX_BOX {
            return Err(Error::TruncationTooSmall {
                bound: m as f64,
                tol: f64::NAN,
            });
        }
    }
    let (mut pmf, mass) = enumerate(labels, c1, c2, m);
    for p in pmf.values_mut() {
        *p = p.clone() / mass.clone();
    }
    let tail = tail_bound(labels, c1, c2, m);
    let tail_rel = tail.clone() / mass.clone();
    Ok(ExactPmf {
        pmf,
        mass,
        tail,
        tail_rel,
        trunc: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use stripgibbs_core::rational::{ratio, to_f64};
    use stripgibbs_core::Rational;

    #[test]
    fn width_one_balanced_is_geometric() {
        let e = exact_pmf_lpp_small_n(
            &[ratio(1, 2)],
            &ratio(1, 1),
            &ratio(1, 1),
            &ratio(1, 1_000_000),
        )
        .unwrap();
        let p0 = &e.pmf[&vec![0]];
        let half = ratio(1, 2);
        // true value 1/2 lies within the certified band
        let band = &e.tail_rel * ratio(2, 1);
        assert!((p0 - &half).abs() <= band);
        let total: Rational = e.pmf.values().sum();
        assert_eq!(total, ratio(1, 1));
    }

    #[test]
    fn width_one_marginal_ignores_c1() {
        for c1 in [ratio(1, 2), ratio(3, 2)] {
            let e = exact_pmf_lpp_small_n(&[0.4f64], &to_f64(&c1), &1.2, &1e-12).unwrap();
            for (x, p) in &e.pmf {
                let q: f64 = 0.48;
                let expect = (1.0 - q) * q.powi(x[0] as i32);
                assert!((p - expect).abs() < 1e-10, "{x:?}: {p} vs {expect}");
            }
        }
    }

    #[test]
    fn tail_bound_is_honest() {
        let labels = [0.4, 0.3];
        let small = exact_pmf_lpp_small_n(&labels, &0.9, &1.1, &1e-3).unwrap();
        let big = exact_pmf_lpp_small_n(&labels, &0.9, &1.1, &1e-13).unwrap();
        assert!(big.mass - small.mass <= small.tail);
        assert!(big.mass >= small.mass);
    }
}
