//! Numerical verification of the quadratic algebra.
//!
//! For all `x, y <= x_max` the following are evaluated on a leading block
//! `[0, B)^2` of the truncated operators, with `(z)_+ = max(z, 0)`:
//!
//! * bulk: `M^->_x[a] M^v_y[b] = (ab)^{min(x,y)} (1-ab) sum_{z >= (y-x)_+} M^v_z[b] M^->_{x-y+z}[a]`,
//! * left: `w^T M^v_x[a] = (a c1)^x (1 - a c1) sum_y w^T M^->_y[a]`,
//! * right: `M^->_x[a] v = (a c2)^x (1 - a c2) sum_y M^v_y[a] v`,
//!
//! together with the Cauchy and Littlewood relations they are built from,
//! the auxiliary relations that close the argument, the eigenrelations
//! `w^T S = c1 w^T`, `T v = c2 v` and the shift identity
//! `T^x S^y = T^{(x-y)_+} S^{(y-x)_+}`.
//!
//! The only truncation error on the block comes from sums whose inner index
//! reaches `K`; those are geometric series bounded in closed form, and `B`
//! is reduced from `K / 2` until the bound is below the tolerance.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use stripgibbs_core::{Error, Result, Step};

use crate::operator::{boundary_vector, build_m, lower_shift, upper_shift};

/// Residual of one named relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    /// Relation name.
    pub name: String,
    /// `max |lhs - rhs|` over the block and all `x, y <= x_max`.
    pub residual: f64,
}

/// Outcome of [`verify_quadratic_algebra`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    /// Truncation size `K`.
    pub trunc_k: usize,
    /// Side `B` of the inspected block.
    pub block: usize,
    /// Upper bound on the truncation error on the block.
    pub tail_bound: f64,
    /// One entry per relation.
    pub relations: Vec<RelationResidual>,
}

impl AlgebraReport {
    /// Largest residual over all relations.
    pub fn max_residual(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }

    /// Names of the relations whose residual is not below `tol`.
    pub fn failing(&self, tol: f64) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|r| !(r.residual < tol))
            .map(|r| r.name.as_str())
            .collect()
    }

    /// Residual of the relation called `name`.
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.relations
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.residual)
    }
}

fn mat_diff(a: &DMatrix<f64>, b: &DMatrix<f64>, n: usize) -> f64 {
    (a.view((0, 0), (n, n)) - b.view((0, 0), (n, n))).amax()
}

fn vec_diff(a: &DVector<f64>, b: &DVector<f64>, n: usize) -> f64 {
    (a.rows(0, n) - b.rows(0, n)).amax()
}

fn row_diff(a: &nalgebra::RowDVector<f64>, b: &nalgebra::RowDVector<f64>, n: usize) -> f64 {
    (a.columns(0, n) - b.columns(0, n)).amax()
}

/// Closed-form bound on the truncation error of every relation on `[0, B)^2`.
fn tail_bound(a: f64, b: f64, c1: f64, c2: f64, k: usize, block: usize, x_max: usize) -> f64 {
    let (kf, bf, xf) = (k as f64, block as f64, x_max as f64);
    if k <= block + x_max {
        return f64::INFINITY;
    }
    // sums over z of M^->_{z+d}[p] M^v_z[q]: terms at most p^{z - x_max} q^z, z >= K - B - x_max
    let amin = a.min(b);
    let bulk = |pq: f64| {
        ((bf + xf).ln() - xf * amin.ln() + (kf - bf - xf) * pq.ln() - (1.0 - pq).ln()).exp()
    };
    // sums over n >= K of c^n a^{n + 2y - n'}
    let edge = |ac: f64| (bf.ln() + kf * ac.ln() - bf * a.ln() - (1.0 - ac).ln()).exp();
    2.0 * bulk(a * b) + edge(a * c1) + edge(a * c2)
}

struct Family {
    right: Vec<DMatrix<f64>>,
    down: Vec<DMatrix<f64>>,
}

impl Family {
    fn new(a: f64, k: usize) -> Result<Self> {
        let mut right = Vec::with_capacity(k);
        let mut down = Vec::with_capacity(k);
        for x in 0..k as u64 {
            right.push(build_m(x, &a, k, Step::Right)?.entries);
            down.push(build_m(x, &a, k, Step::Down)?.entries);
        }
        Ok(Self { right, down })
    }

    fn sum_right(&self) -> DMatrix<f64> {
        self.right.iter().sum()
    }

    fn sum_down(&self) -> DMatrix<f64> {
        self.down.iter().sum()
    }
}

/// `sum_{z >= 0, z + d >= 0} left(z + d) right(z)` over the truncation.
fn shifted_sum(k: usize, d: i64, f: impl Fn(usize, usize) -> DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(k, k);
    for z in 0..k as i64 {
        let zd = z + d;
        if zd >= 0 && zd < k as i64 {
            out += f(zd as usize, z as usize);
        }
    }
    out
}

/// Verifies the quadratic algebra of the truncated operators; see the module docs.
///
/// Requires `0 < a, b < 1`, `c1, c2 > 0`, `a c1 < 1`, `a c2 < 1`.
pub fn verify_quadratic_algebra(
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    k: usize,
    x_max: usize,
    tol: f64,
) -> Result<AlgebraReport> {
    for (name, p) in [("a", a), ("b", b)] {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ParamDomain(format!(
                "{name} = {p} must lie in (0, 1)"
            )));
        }
    }
    if !(c1 > 0.0 && c2 > 0.0 && a * c1 < 1.0 && a * c2 < 1.0) {
        return Err(Error::ParamDomain(format!(
            "need c1, c2 > 0 and a c1, a c2 < 1, got c1 = {c1}, c2 = {c2}"
        )));
    }
    let mut block = k / 2;
    let mut bound = tail_bound(a, b, c1, c2, k, block, x_max);
    while !(bound < tol) && block > x_max + 1 {
        block -= 1;
        bound = tail_bound(a, b, c1, c2, k, block, x_max);
    }
    if !(bound < tol) {
        return Err(Error::TruncationTooSmall { bound, tol });
    }

    let fa = Family::new(a, k)?;
    let fb = Family::new(b, k)?;
    let w = boundary_vector(&c1, k).entries;
    let v = boundary_vector(&c2, k).entries;
    let wt = w.transpose();
    let s = lower_shift::<f64>(k).entries;
    let t = upper_shift::<f64>(k).entries;
    let (ab, ac1, ac2) = (a * b, a * c1, a * c2);
    let xm = x_max as i64;

    let mut bulk = 0.0f64;
    let mut extra_bulk = 0.0f64;
    let mut cauchy = 0.0f64;
    let mut shift = 0.0f64;
    for d in -xm..=xm {
        // sum_z M^v_z[b] M^->_{z+d}[a] and sum_z M^->_{z+d}[a] M^v_z[b]
        let vr = shifted_sum(k, d, |zd, z| &fb.down[z] * &fa.right[zd]);
        let rv = shifted_sum(k, d, |zd, z| &fa.right[zd] * &fb.down[z]);
        cauchy = cauchy.max(mat_diff(&vr, &rv, block));
        for y in 0..=x_max {
            let x = y as i64 + d;
            if x < 0 || x > xm {
                continue;
            }
            let x = x as usize;
            let lhs = &fa.right[x] * &fb.down[y];
            let factor = ab.powi(x.min(y) as i32) * (1.0 - ab);
            bulk = bulk.max(mat_diff(&lhs, &(&vr * factor), block));
            extra_bulk = extra_bulk.max(mat_diff(&lhs, &(&rv * factor), block));
        }
    }
    let mut tp = vec![DMatrix::<f64>::identity(k, k)];
    let mut sp = vec![DMatrix::<f64>::identity(k, k)];
    for _ in 0..x_max {
        tp.push(tp.last().unwrap() * &t);
        sp.push(sp.last().unwrap() * &s);
    }
    for x in 0..=x_max {
        for y in 0..=x_max {
            let lhs = &tp[x] * &sp[y];
            let rhs = &tp[x.saturating_sub(y)] * &sp[y.saturating_sub(x)];
            shift = shift.max(mat_diff(&lhs, &rhs, block));
        }
    }

    let w_sum_right = &wt * fa.sum_right();
    let w_sum_down = &wt * fa.sum_down();
    let sum_down_v = fa.sum_down() * &v;
    let sum_right_v = fa.sum_right() * &v;
    let (mut left, mut right, mut extra_left, mut extra_right) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for x in 0..=x_max {
        let fl = ac1.powi(x as i32) * (1.0 - ac1);
        let fr = ac2.powi(x as i32) * (1.0 - ac2);
        let wl = &wt * &fa.down[x];
        let rv = &fa.right[x] * &v;
        left = left.max(row_diff(&wl, &(&w_sum_right * fl), block));
        extra_left = extra_left.max(row_diff(&wl, &(&w_sum_down * fl), block));
        right = right.max(vec_diff(&rv, &(&sum_down_v * fr), block));
        extra_right = extra_right.max(vec_diff(&rv, &(&sum_right_v * fr), block));
    }
    let littlewood_left = row_diff(&w_sum_right, &w_sum_down, block);
    let littlewood_right = vec_diff(&sum_down_v, &sum_right_v, block);
    let eigen_left = row_diff(&(&wt * &s), &(&wt * c1), block.min(k - 1));
    let eigen_right = vec_diff(&(&t * &v), &(&v * c2), block.min(k - 1));

    let relations = [
        ("bulk", bulk),
        ("left", left),
        ("right", right),
        ("cauchy", cauchy),
        ("littlewood_left", littlewood_left),
        ("littlewood_right", littlewood_right),
        ("extra_bulk", extra_bulk),
        ("extra_left", extra_left),
        ("extra_right", extra_right),
        ("eigen_left", eigen_left),
        ("eigen_right", eigen_right),
        ("shift", shift),
    ]
    .into_iter()
    .map(|(name, residual)| RelationResidual {
        name: name.to_string(),
        residual,
    })
    .collect();
    Ok(AlgebraReport {
        trunc_k: k,
        block,
        tail_bound: bound,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_at_default_parameters() {
        let r = verify_quadratic_algebra(0.5, 0.5, 0.8, 0.8, 60, 5, 1e-10).unwrap();
        assert_eq!(r.block, 30);
        assert!(r.failing(1e-10).is_empty(), "{r:?}");
    }

    #[test]
    fn relations_hold_with_unequal_labels_and_large_boundary() {
        let r = verify_quadratic_algebra(0.3, 0.6, 1.5, 0.4, 60, 4, 1e-10).unwrap();
        assert!(r.failing(1e-10).is_empty(), "{r:?}");
    }

    #[test]
    fn tight_tolerance_shrinks_the_block_or_fails() {
        let r = verify_quadratic_algebra(0.7, 0.7, 0.9, 0.9, 40, 3, 1e-10);
        match r {
            Ok(rep) => assert!(rep.block < 20 && rep.tail_bound < 1e-10),
            Err(e) => assert!(matches!(e, Error::TruncationTooSmall { .. })),
        }
    }

    #[test]
    fn a_wrong_relation_is_detected() {
        // the bulk relation with the labels of the right-hand side swapped fails
        let k = 40;
        let fa = Family::new(0.3, k).unwrap();
        let fb = Family::new(0.6, k).unwrap();
        let lhs = &fa.right[2] * &fb.down[1];
        let swapped =
            shifted_sum(k, 1, |zd, z| &fa.down[z] * &fb.right[zd]) * (0.18f64.powi(1) * 0.82);
        assert!(mat_diff(&lhs, &swapped, 20) > 1e-3);
    }
}
