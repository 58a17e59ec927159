//! Walk pairs and the reweighting functionals.

use serde::{Deserialize, Serialize};

use stripgibbs_core::logsumexp;

/// Two walks `L_1(1..=N)`, `L_2(1..=N)`, with `L_1(0) = L_2(0) = 0` implied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkPair<T> {
    /// `L_1(1), ..., L_1(N)`.
    pub l1: Vec<T>,
    /// `L_2(1), ..., L_2(N)`.
    pub l2: Vec<T>,
}

impl<T: Copy + Default + std::ops::Add<Output = T> + std::ops::Sub<Output = T>> WalkPair<T> {
    /// Pair from increment vectors.
    pub fn from_increments(x1: &[T], x2: &[T]) -> Self {
        let cum = |x: &[T]| {
            let mut s = T::default();
            x.iter()
                .map(|&d| {
                    s = s + d;
                    s
                })
                .collect()
        };
        Self {
            l1: cum(x1),
            l2: cum(x2),
        }
    }

    /// Strip width `N`.
    pub fn n(&self) -> usize {
        self.l1.len()
    }

    /// `L_1(j)` for `j = 0..=N`.
    pub fn l1_at(&self, j: usize) -> T {
        if j == 0 {
            T::default()
        } else {
            self.l1[j - 1]
        }
    }

    /// `L_2(j)` for `j = 0..=N`.
    pub fn l2_at(&self, j: usize) -> T {
        if j == 0 {
            T::default()
        } else {
            self.l2[j - 1]
        }
    }

    /// Increments `L_1(j) - L_1(j-1)`.
    pub fn increments1(&self) -> Vec<T> {
        (1..=self.n())
            .map(|j| self.l1_at(j) - self.l1_at(j - 1))
            .collect()
    }

    /// Increments `L_2(j) - L_2(j-1)`.
    pub fn increments2(&self) -> Vec<T> {
        (1..=self.n())
            .map(|j| self.l2_at(j) - self.l2_at(j - 1))
            .collect()
    }
}

/// Lossless-enough conversion of walk values to `f64` for statistics.
pub trait ToF64:
    Copy + Default + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self>
{
    /// The value as `f64`.
    fn to_f64(self) -> f64;
}

impl ToF64 for i64 {
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl ToF64 for f64 {
    fn to_f64(self) -> f64 {
        self
    }
}

/// A walk pair with an importance log-weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSample<T> {
    /// The walks.
    pub walks: WalkPair<T>,
    /// Log importance weight.
    pub log_weight: f64,
}

/// `max_j (L_2(j) - L_1(j-1))` over `j = 1..=N`.
pub fn max_gap(w: &WalkPair<i64>) -> i64 {
    (1..=w.n())
        .map(|j| w.l2_at(j) - w.l1_at(j - 1))
        .max()
        .expect("N >= 1")
}

/// `log V` for the geometric model.
pub fn log_v_lpp(w: &WalkPair<i64>, c1: f64, c2: f64) -> f64 {
    let n = w.n();
    let e1 = max_gap(w) as f64;
    let e2 = (w.l1_at(n) - w.l2_at(n)) as f64;
    let t1 = if e1 == 0.0 { 0.0 } else { e1 * (c1 * c2).ln() };
    let t2 = if e2 == 0.0 { 0.0 } else { e2 * c2.ln() };
    t1 + t2
}

/// `log sum_j e^{L_2(j) - L_1(j-1)}`.
pub fn log_gap_sum(w: &WalkPair<f64>) -> f64 {
    let terms: Vec<f64> = (1..=w.n()).map(|j| w.l2_at(j) - w.l1_at(j - 1)).collect();
    logsumexp(&terms)
}

/// `log V` for the log-gamma model.
pub fn log_v_lgg(w: &WalkPair<f64>, u: f64, v: f64) -> f64 {
    let n = w.n();
    let mut out = 0.0;
    if u + v != 0.0 {
        out -= (u + v) * log_gap_sum(w);
    }
    if v != 0.0 {
        out -= v * (w.l1_at(n) - w.l2_at(n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use stripgibbs_core::RngStream;

    #[test]
    fn lpp_examples() {
        let w = WalkPair {
            l1: vec![2],
            l2: vec![1],
        };
        assert_eq!(log_v_lpp(&w, 1.0, 1.0), 0.0);
        let w = WalkPair {
            l1: vec![0, 0],
            l2: vec![3, 3],
        };
        assert!((log_v_lpp(&w, 2.0, 0.25) - 8f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn lpp_width_one_factorizes() {
        let mut rng = RngStream::new(1, 0).rng();
        for _ in 0..100 {
            let (x, y) = (rng.random_range(0..20i64), rng.random_range(0..20i64));
            let (c1, c2) = (rng.random_range(0.2..2.0), rng.random_range(0.2..2.0));
            let w = WalkPair {
                l1: vec![x],
                l2: vec![y],
            };
            let direct = x as f64 * f64::ln(c2) + y as f64 * f64::ln(c1);
            assert!((log_v_lpp(&w, c1, c2) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn lgg_examples() {
        let mut rng = RngStream::new(2, 0).rng();
        for _ in 0..100 {
            let w = WalkPair::from_increments(
                &[rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
                &[rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
            );
            assert_eq!(log_v_lgg(&w, 0.0, 0.0), 0.0);
            let (x, y) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let (u, v) = (0.7, -0.2);
            let w1 = WalkPair {
                l1: vec![x],
                l2: vec![y],
            };
            assert!((log_v_lgg(&w1, u, v) - (-(u + v) * y - v * (x - y))).abs() < 1e-12);
            // another pair with the same gaps L_2(j) - L_1(j-1) and L_1(N) - L_2(N)
            let gaps: Vec<f64> = (1..=2).map(|j| w.l2_at(j) - w.l1_at(j - 1)).collect();
            let end = w.l1_at(2) - w.l2_at(2);
            let m1 = rng.random_range(-5.0..5.0);
            let l2 = vec![gaps[0], gaps[1] + m1];
            let other = WalkPair {
                l1: vec![m1, end + l2[1]],
                l2,
            };
            let d = log_v_lgg(&other, u, v) - log_v_lgg(&w, u, v);
            assert!(d.abs() < 1e-12);
        }
    }
}
