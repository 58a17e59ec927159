//! Values on the two-layer graph and their Gibbs weights.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use stripgibbs_core::rational::pow_nonneg;
use stripgibbs_core::{log_gamma_weight, DownRightPath, ModelKind, ModelParams, Rational, Step};

use crate::signature::Signature2;

/// Values `lambda_i^(j)` on the two-layer graph of a down-right path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoLayerConfig<T> {
    /// The underlying path; its `N` steps are the edges of each layer.
    pub path: DownRightPath,
    /// `values[j] = (lambda_1^(j), lambda_2^(j))` for `j = 0..=N`.
    pub values: Vec<Signature2<T>>,
}

impl<T: Copy> TwoLayerConfig<T> {
    /// Configuration on `path` with one signature per vertex.
    pub fn new(path: DownRightPath, values: Vec<Signature2<T>>) -> Self {
        assert_eq!(values.len(), path.n() + 1, "one signature per vertex");
        Self { path, values }
    }

    /// First layer `lambda_1^(0..=N)`.
    pub fn first_layer(&self) -> Vec<T> {
        self.values.iter().map(|s| s.l1).collect()
    }
}

impl<T: Copy + std::ops::Add<Output = T>> TwoLayerConfig<T> {
    /// Adds `x` to every value.
    pub fn shift(&self, x: T) -> Self {
        Self {
            path: self.path.clone(),
            values: self
                .values
                .iter()
                .map(|s| Signature2 {
                    l1: s.l1 + x,
                    l2: s.l2 + x,
                })
                .collect(),
        }
    }
}

/// Log of the geometric edge factor for edge `j` (from vertex `j - 1` to `j`).
fn geom_edge_log(step: Step, prev: Signature2<i64>, next: Signature2<i64>, log_a: f64) -> f64 {
    // `hi` is the endpoint whose values are larger on the solid edges.
    let (hi, lo, dashed) = match step {
        Step::Right => (next, prev, prev.l1 >= next.l2),
        Step::Down => (prev, next, next.l1 >= prev.l2),
    };
    let (x1, x2) = (hi.l1 - lo.l1, hi.l2 - lo.l2);
    if x1 < 0 || x2 < 0 || !dashed {
        return f64::NEG_INFINITY;
    }
    let e = (x1 + x2) as f64;
    if e == 0.0 {
        0.0
    } else {
        e * log_a
    }
}

fn lg_edge_log(step: Step, prev: Signature2<f64>, next: Signature2<f64>, alpha: f64) -> f64 {
    let (hi, lo, d_hi, d_lo) = match step {
        Step::Right => (next, prev, prev.l1, next.l2),
        Step::Down => (prev, next, next.l1, prev.l2),
    };
    log_gamma_weight(alpha, hi.l1 - lo.l1) + log_gamma_weight(alpha, hi.l2 - lo.l2)
        - (-(d_hi - d_lo)).exp()
}

/// Log of the two-layer Gibbs weight; `-inf` where a geometric indicator
/// fails or a geometric value pair is not a signature.
pub fn log_wt_two_layer(config: &TwoLayerConfig<f64>, params: &ModelParams) -> f64 {
    let labels = config.path.edge_labels(params);
    let v = &config.values;
    let n = labels.len();
    match params.model {
        ModelKind::GeometricLpp => {
            let iv: Vec<Signature2<i64>> = v
                .iter()
                .map(|s| Signature2 {
                    l1: s.l1.round() as i64,
                    l2: s.l2.round() as i64,
                })
                .collect();
            if iv.iter().any(|s| s.l1 < s.l2) {
                return f64::NEG_INFINITY;
            }
            let mut total = geom_arc_log(iv[0], params.left) + geom_arc_log(iv[n], params.right);
            for j in 1..=n {
                total += geom_edge_log(
                    config.path.steps[j - 1],
                    iv[j - 1],
                    iv[j],
                    labels[j - 1].ln(),
                );
            }
            total
        }
        ModelKind::LogGamma => {
            let mut total = -params.left * (v[0].l1 - v[0].l2) - params.right * (v[n].l1 - v[n].l2);
            for j in 1..=n {
                total += lg_edge_log(config.path.steps[j - 1], v[j - 1], v[j], labels[j - 1]);
            }
            total
        }
    }
}

fn geom_arc_log(s: Signature2<i64>, c: f64) -> f64 {
    let e = (s.l1 - s.l2) as f64;
    if e == 0.0 {
        0.0
    } else {
        e * c.ln()
    }
}

/// Exact geometric two-layer weight with rational edge labels `labels[j - 1]`
/// on edge `j` and boundary parameters `c1`, `c2`.
///
/// Arc exponents `lambda_1 - lambda_2` must be nonnegative; they always are
/// when the edge indicators hold.
pub fn wt_two_layer_exact(
    config: &TwoLayerConfig<i64>,
    labels: &[Rational],
    c1: &Rational,
    c2: &Rational,
) -> Rational {
    let v = &config.values;
    let n = labels.len();
    if v.iter().any(|s| s.l1 < s.l2) {
        return Rational::zero();
    }
    let mut total = Rational::one();
    for j in 1..=n {
        let (hi, lo, dashed) = match config.path.steps[j - 1] {
            Step::Right => (v[j], v[j - 1], v[j - 1].l1 >= v[j].l2),
            Step::Down => (v[j - 1], v[j], v[j].l1 >= v[j - 1].l2),
        };
        let (x1, x2) = (hi.l1 - lo.l1, hi.l2 - lo.l2);
        if x1 < 0 || x2 < 0 || !dashed {
            return Rational::zero();
        }
        total *= pow_nonneg(&labels[j - 1], x1 + x2);
    }
    let (g0, gn) = (v[0].l1 - v[0].l2, v[n].l1 - v[n].l2);
    if g0 < 0 || gn < 0 {
        return Rational::zero();
    }
    total * pow_nonneg(c1, g0) * pow_nonneg(c2, gn)
}
