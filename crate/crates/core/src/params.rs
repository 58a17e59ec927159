//! Model parameters and their domain checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two solvable models a parameter set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Geometric last-passage percolation. Bulk parameters `a_i`, boundary parameters `c1`, `c2`.
    GeometricLpp,
    /// Log-gamma polymer. Bulk parameters `alpha_i`, boundary parameters `u`, `v`.
    LogGamma,
}

/// Parameters of a model on the strip of width `N = bulk.len()`.
///
/// Bulk parameters are indexed cyclically: [`ModelParams::label`] with index
/// `i` returns `bulk[(i - 1) mod N]`, so `label(1)` is the first entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Model tag.
    pub model: ModelKind,
    /// Bulk parameters, one per column of the strip.
    pub bulk: Vec<f64>,
    /// Left boundary parameter (`c1` or `u`).
    pub left: f64,
    /// Right boundary parameter (`c2` or `v`).
    pub right: f64,
    /// Set by [`ModelParams::validate`]: `c1 c2 < 1` resp. `u + v > 0`.
    #[serde(default)]
    pub fan_region: bool,
}

impl ModelParams {
    /// Builds and validates a parameter set.
    pub fn new(model: ModelKind, bulk: Vec<f64>, left: f64, right: f64) -> Result<Self> {
        Self {
            model,
            bulk,
            left,
            right,
            fan_region: false,
        }
        .validate()
    }

    /// Homogeneous parameters: every bulk entry equal to `bulk`.
    pub fn homogeneous(
        model: ModelKind,
        n: usize,
        bulk: f64,
        left: f64,
        right: f64,
    ) -> Result<Self> {
        Self::new(model, vec![bulk; n], left, right)
    }

    /// Strip width `N`.
    pub fn n(&self) -> usize {
        self.bulk.len()
    }

    /// Bulk parameter with cyclic index `i`, so `label(i + N) == label(i)`.
    pub fn label(&self, i: i64) -> f64 {
        let n = self.bulk.len() as i64;
        self.bulk[(i - 1).rem_euclid(n) as usize]
    }

    /// Checks the strict inequalities of the model and sets `fan_region`.
    pub fn validate(mut self) -> Result<Self> {
        let n = self.bulk.len();
        if n == 0 {
            return Err(Error::ParamDomain("strip width N must be positive".into()));
        }
        let finite = self.bulk.iter().all(|x| x.is_finite())
            && self.left.is_finite()
            && self.right.is_finite();
        if !finite {
            return Err(Error::ParamDomain("parameters must be finite".into()));
        }
        match self.model {
            ModelKind::GeometricLpp => {
                for (i, &a) in self.bulk.iter().enumerate() {
                    if a <= 0.0 {
                        return Err(Error::ParamDomain(format!(
                            "a_{} = {a} must be positive",
                            i + 1
                        )));
                    }
                }
                if self.left <= 0.0 {
                    return Err(Error::ParamDomain(format!(
                        "c1 = {} must be positive",
                        self.left
                    )));
                }
                if self.right <= 0.0 {
                    return Err(Error::ParamDomain(format!(
                        "c2 = {} must be positive",
                        self.right
                    )));
                }
                for i in 0..n {
                    for j in i..n {
                        let p = self.bulk[i] * self.bulk[j];
                        if p >= 1.0 {
                            return Err(Error::ParamDomain(format!(
                                "a_{} a_{} = {p} must be < 1",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                    let (a, c1, c2) = (self.bulk[i], self.left, self.right);
                    if a * c1 >= 1.0 {
                        return Err(Error::ParamDomain(format!(
                            "a_{} c1 = {} must be < 1",
                            i + 1,
                            a * c1
                        )));
                    }
                    if a * c2 >= 1.0 {
                        return Err(Error::ParamDomain(format!(
                            "a_{} c2 = {} must be < 1",
                            i + 1,
                            a * c2
                        )));
                    }
                }
                self.fan_region = self.left * self.right < 1.0;
            }
            ModelKind::LogGamma => {
                for i in 0..n {
                    for j in i..n {
                        let s = self.bulk[i] + self.bulk[j];
                        if s <= 0.0 {
                            return Err(Error::ParamDomain(format!(
                                "alpha_{} + alpha_{} = {s} must be > 0",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                    let a = self.bulk[i];
                    if a + self.left <= 0.0 {
                        return Err(Error::ParamDomain(format!(
                            "alpha_{} + u = {} must be > 0",
                            i + 1,
                            a + self.left
                        )));
                    }
                    if a + self.right <= 0.0 {
                        return Err(Error::ParamDomain(format!(
                            "alpha_{} + v = {} must be > 0",
                            i + 1,
                            a + self.right
                        )));
                    }
                }
                self.fan_region = self.left + self.right > 0.0;
            }
        }
        Ok(self)
    }

    /// Parameter of the bulk vertex weight between labels `i` and `j`:
    /// `a_i a_j` (geometric) or `alpha_i + alpha_j` (log-gamma).
    pub fn bulk_weight_param(&self, i: i64, j: i64) -> f64 {
        match self.model {
            ModelKind::GeometricLpp => self.label(i) * self.label(j),
            ModelKind::LogGamma => self.label(i) + self.label(j),
        }
    }

    /// Parameter of a boundary vertex weight with bulk label `i`.
    pub fn boundary_weight_param(&self, i: i64, left: bool) -> f64 {
        let c = if left { self.left } else { self.right };
        match self.model {
            ModelKind::GeometricLpp => self.label(i) * c,
            ModelKind::LogGamma => self.label(i) + c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_shock_parameters_are_valid() {
        let p = ModelParams::new(ModelKind::GeometricLpp, vec![0.4, 0.4], 1.5, 1.5).unwrap();
        assert!(!p.fan_region);
    }

    #[test]
    fn geometric_a_above_one_is_rejected() {
        assert!(ModelParams::new(ModelKind::GeometricLpp, vec![0.8, 0.9], 1.0, 1.0).is_ok());
        let err = ModelParams::new(ModelKind::GeometricLpp, vec![0.8, 1.3], 0.5, 0.5).unwrap_err();
        match err {
            Error::ParamDomain(msg) => {
                assert!(msg.contains("a_1 a_2") || msg.contains("a_2 a_2"), "{msg}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn geometric_boundary_product_is_checked() {
        assert!(ModelParams::new(ModelKind::GeometricLpp, vec![0.5], 2.0, 1.0).is_err());
        assert!(ModelParams::new(ModelKind::GeometricLpp, vec![0.5], 1.0, 2.5).is_err());
    }

    #[test]
    fn log_gamma_negative_u_in_fan_region() {
        let p = ModelParams::new(ModelKind::LogGamma, vec![1.0, 1.0], -0.5, 2.0).unwrap();
        assert!(p.fan_region);
        let q = ModelParams::new(ModelKind::LogGamma, vec![1.0], -0.4, 0.1).unwrap();
        assert!(!q.fan_region);
        assert!(ModelParams::new(ModelKind::LogGamma, vec![1.0], -1.0, 0.1).is_err());
    }

    #[test]
    fn labels_are_cyclic() {
        let p = ModelParams::new(ModelKind::GeometricLpp, vec![0.1, 0.2, 0.3], 1.0, 1.0).unwrap();
        assert_eq!(p.label(1), 0.1);
        assert_eq!(p.label(3), 0.3);
        assert_eq!(p.label(4), 0.1);
        assert_eq!(p.label(0), 0.3);
        assert_eq!(p.label(-2), 0.1);
    }

    #[test]
    fn config_roundtrip() {
        let p = ModelParams::new(ModelKind::LogGamma, vec![1.0, 2.0], 0.5, 0.25).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("log-gamma"));
        let q: ModelParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
