//! `mpa-check`: the quadratic algebra on a certified block and the matrix
//! product probabilities against enumeration.

use serde::{Deserialize, Serialize};

use stripgibbs_core::{DownRightPath, ModelKind};
use stripgibbs_mpa::{mpa_pmf_many, verify_quadratic_algebra};
use stripgibbs_stationary::exact_pmf_lpp_small_n;

use crate::config::{require, ParamsSpec, RunSettings};
use crate::error::Result;
use crate::report::{fmt, Check, Report, Table};
use crate::tolerances;

/// Quadratic algebra settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgebraConfig {
    /// First bulk label.
    pub a: f64,
    /// Second bulk label.
    pub b: f64,
    /// Left boundary parameter.
    pub c1: f64,
    /// Right boundary parameter.
    pub c2: f64,
    /// Truncation size of the operators.
    pub trunc_k: usize,
    /// Largest operator index checked.
    pub x_max: usize,
    /// Residual tolerance on the certified block.
    pub tol: f64,
    /// Smallest acceptable certified block.
    pub min_block: usize,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        Self {
            a: 0.5,
            b: 0.5,
            c1: 0.8,
            c2: 0.8,
            trunc_k: 60,
            x_max: 5,
            tol: tolerances::MPA_RESIDUAL,
            min_block: 30,
        }
    }
}

/// Matrix product probabilities against enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PmfConfig {
    /// Geometric parameters in the fan region.
    pub params: ParamsSpec,
    /// Increments `0..=side` in every coordinate are compared.
    pub side: u64,
    /// Largest acceptable absolute difference.
    pub tol: f64,
    /// Relative truncation tolerance of the enumeration.
    pub enumeration_tol: f64,
}

impl Default for PmfConfig {
    fn default() -> Self {
        Self {
            params: ParamsSpec::homogeneous(ModelKind::GeometricLpp, 3, 0.3, 0.9, 0.9),
            side: 4,
            tol: tolerances::MPA_PMF_ABS,
            enumeration_tol: 1e-10,
        }
    }
}

/// Configuration of `mpa-check`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MpaCheckConfig {
    /// Seed and threads.
    pub run: RunSettings,
    /// Algebra settings.
    pub algebra: AlgebraConfig,
    /// Probability settings.
    pub pmf: PmfConfig,
}

fn boxed(n: usize, side: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| (0..=side).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// Appends the algebra checks and the pmf comparison to `report`.
pub fn check_into(cfg: &MpaCheckConfig, report: &mut Report) -> Result<()> {
    let a = &cfg.algebra;
    let params = cfg.pmf.params.to_params()?;
    require(params.model == ModelKind::GeometricLpp, || {
        "mpa-check needs geometric parameters".into()
    })?;

    let alg = verify_quadratic_algebra(a.a, a.b, a.c1, a.c2, a.trunc_k, a.x_max, a.tol)?;
    report.check(Check::at_least(
        "mpa certified block",
        alg.block as f64,
        a.min_block as f64,
    ));
    report.check(Check::info("mpa truncation tail bound", alg.tail_bound));
    let mut rel = Table::new("relations", &["relation", "residual", "tolerance"]);
    for r in &alg.relations {
        report.check(Check::below(
            format!("mpa relation {}", r.name),
            r.residual,
            a.tol,
        ));
        rel.push([r.name.clone(), fmt(r.residual), fmt(a.tol)]);
    }
    report.table(rel);

    let p = &cfg.pmf;
    let exact = exact_pmf_lpp_small_n(
        &params.bulk,
        &params.left,
        &params.right,
        &p.enumeration_tol,
    )?;
    let xs = boxed(params.n(), p.side);
    let got = mpa_pmf_many(&DownRightPath::horizontal(params.n()), &xs, &params, 1e-12)?;
    let mut table = Table::new("pmf", &["increments", "mpa", "enumeration", "abs_diff"]);
    let mut worst = 0.0f64;
    for (x, m) in xs.iter().zip(&got) {
        let key: Vec<i64> = x.iter().map(|&v| v as i64).collect();
        let e = exact.pmf.get(&key).copied().unwrap_or(0.0);
        let d = (m.value - e).abs();
        worst = worst.max(d);
        let label = x
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        table.push([label, fmt(m.value), fmt(e), fmt(d)]);
    }
    report.table(table);
    report.check(Check::below("mpa pmf vs enumeration", worst, p.tol));
    Ok(())
}

/// Runs `mpa-check`.
pub fn run(cfg: &MpaCheckConfig) -> Result<Report> {
    let mut report = Report::new("mpa-check", cfg.run.seed, cfg);
    check_into(cfg, &mut report)?;
    Ok(report)
}
