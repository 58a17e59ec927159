//! `stationarity-test`: the reweighted walk laws under one translation step,
//! the closed-form special cases and the two-start ergodicity check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stripgibbs_core::dist::log_inv_gamma_cdf;
use stripgibbs_core::{geom_pmf, ModelKind, ModelParams, RngStream};
use stripgibbs_lg::{run_replicas_lg, HorizontalKernelLg};
use stripgibbs_lpp::{run_replicas, HorizontalKernel};
use stripgibbs_stationary::{sample_stationary_is, IsConfig, IsRun};
use stripgibbs_stats::{ks_one_sample, ks_statistic, ks_two_sample, tv_discrete, WeightedEcdf};

use crate::config::{require, ParamsSpec, RunSettings};
use crate::error::Result;
use crate::report::{fmt, Check, Report, Table};
use crate::tolerances;

/// Samples evolved per random substream; fixes the stream layout independently of threads.
const CHUNK: usize = 4096;

/// A named parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedParams {
    /// Label used in check names and tables.
    pub name: String,
    /// Model parameters.
    pub params: ParamsSpec,
}

impl NamedParams {
    fn new(name: &str, model: ModelKind, n: usize, bulk: f64, left: f64, right: f64) -> Self {
        Self {
            name: name.into(),
            params: ParamsSpec::homogeneous(model, n, bulk, left, right),
        }
    }
}

/// Closed-form special cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpecialCasesConfig {
    /// Geometric parameters with `c1 c2 = 1`.
    pub geometric: ParamsSpec,
    /// Log-gamma parameters with `u + v = 0`.
    pub log_gamma: ParamsSpec,
    /// Largest acceptable total variation distance.
    pub tv_tol: f64,
}

impl Default for SpecialCasesConfig {
    fn default() -> Self {
        Self {
            geometric: ParamsSpec::homogeneous(ModelKind::GeometricLpp, 4, 0.4, 1.25, 0.8),
            log_gamma: ParamsSpec::homogeneous(ModelKind::LogGamma, 3, 1.0, -0.25, 0.25),
            tv_tol: tolerances::TV_SPECIAL_CASE,
        }
    }
}

/// Two-start ergodicity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErgodicityConfig {
    /// Parameter sets to check.
    pub cases: Vec<NamedParams>,
    /// Constant height increments of the two starting configurations.
    pub starts: (f64, f64),
    /// Translation steps before comparing.
    pub steps: usize,
    /// Independent replicas per start.
    pub replicas: usize,
    /// Largest acceptable KS distance between the terminal laws.
    pub ks_tol: f64,
}

impl Default for ErgodicityConfig {
    fn default() -> Self {
        Self {
            cases: vec![
                NamedParams::new("geometric", ModelKind::GeometricLpp, 4, 0.4, 0.9, 0.9),
                NamedParams::new("log-gamma", ModelKind::LogGamma, 4, 1.0, 0.5, 0.5),
            ],
            starts: (0.0, 10.0),
            steps: 200,
            replicas: 100_000,
            ks_tol: tolerances::ERGODICITY_KS,
        }
    }
}

/// Configuration of `stationarity-test`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StationarityConfig {
    /// Seed and threads.
    pub run: RunSettings,
    /// Importance samples per run.
    pub samples: usize,
    /// Bootstrap replicates per KS p-value.
    pub n_boot: usize,
    /// Smallest acceptable effective sample size.
    pub ess_floor: f64,
    /// Smallest acceptable KS p-value.
    pub p_floor: f64,
    /// Parameter sets tested for invariance under one translation step.
    pub cases: Vec<NamedParams>,
    /// Closed-form special cases; omitted when `null`.
    pub special_cases: Option<SpecialCasesConfig>,
    /// Two-start ergodicity; omitted when `null`.
    pub ergodicity: Option<ErgodicityConfig>,
}

impl Default for StationarityConfig {
    fn default() -> Self {
        Self {
            run: RunSettings::default(),
            samples: 100_000,
            n_boot: 299,
            ess_floor: tolerances::ESS_FLOOR,
            p_floor: tolerances::P_FLOOR,
            cases: vec![
                NamedParams::new("geometric fan", ModelKind::GeometricLpp, 4, 0.4, 0.9, 0.9),
                NamedParams::new("log-gamma fan", ModelKind::LogGamma, 3, 1.0, 0.5, 0.5),
                NamedParams::new("geometric shock", ModelKind::GeometricLpp, 4, 0.4, 1.5, 1.5),
                NamedParams::new("log-gamma shock", ModelKind::LogGamma, 3, 1.0, -0.4, 0.1),
            ],
            special_cases: Some(SpecialCasesConfig::default()),
            ergodicity: Some(ErgodicityConfig::default()),
        }
    }
}

/// Heights `L_1(1..=N)` of every sample after one translation step.
fn evolve_once(run: &IsRun<f64>, params: &ModelParams, stream: RngStream) -> Result<Vec<Vec<f64>>> {
    let chunks = run.samples.chunks(CHUNK).collect::<Vec<_>>();
    let out = match params.model {
        ModelKind::GeometricLpp => {
            let kernel = HorizontalKernel::new(params)?;
            chunks
                .par_iter()
                .enumerate()
                .flat_map_iter(|(c, chunk)| {
                    let mut rng = stream.substream(c as u64).rng();
                    chunk
                        .iter()
                        .map(|s| {
                            let mut g: Vec<i64> = std::iter::once(0)
                                .chain(s.walks.l1.iter().map(|&x| x as i64))
                                .collect();
                            kernel.step(&mut g, 0, &mut rng);
                            g[1..].iter().map(|&x| x as f64).collect()
                        })
                        .collect::<Vec<_>>()
                })
                .collect()
        }
        ModelKind::LogGamma => {
            let kernel = HorizontalKernelLg::new(params)?;
            chunks
                .par_iter()
                .enumerate()
                .flat_map_iter(|(c, chunk)| {
                    let mut rng = stream.substream(c as u64).rng();
                    chunk
                        .iter()
                        .map(|s| {
                            let mut h: Vec<f64> = std::iter::once(0.0)
                                .chain(s.walks.l1.iter().copied())
                                .collect();
                            kernel.step(&mut h, 0, &mut rng);
                            h[1..].to_vec()
                        })
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    };
    Ok(out)
}

fn column(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
    rows.iter().map(|r| r[j]).collect()
}

fn invariance(
    cfg: &StationarityConfig,
    case: &NamedParams,
    stream: RngStream,
    report: &mut Report,
    table: &mut Table,
) -> Result<()> {
    let params = case.params.to_params()?;
    let is = IsConfig::new(cfg.samples, 0.0);
    let reference = sample_stationary_is(&params, is, stream.substream(0))?;
    let source = sample_stationary_is(&params, is, stream.substream(1))?;
    report.check(Check::above(
        format!("{} ESS", case.name),
        reference.ess.min(source.ess),
        cfg.ess_floor,
    ));
    let evolved = evolve_once(&source, &params, stream.substream(2))?;
    let lw = source.log_weights();
    for j in 1..=params.n() {
        let before = reference.ecdf_l1(j)?;
        let after = WeightedEcdf::from_log_weights(&column(&evolved, j - 1), &lw)?;
        let ks = ks_two_sample(&before, &after, cfg.n_boot, stream.substream(10 + j as u64));
        report.check(Check::above(
            format!("{} height {j} KS p-value", case.name),
            ks.p_value,
            cfg.p_floor,
        ));
        table.push([
            case.name.clone(),
            j.to_string(),
            fmt(ks.statistic),
            fmt(ks.p_value),
            fmt(ks.ess.0),
            fmt(ks.ess.1),
        ]);
    }
    Ok(())
}

/// Weighted pmf of integer values on `0..=max`.
fn weighted_pmf(ecdf: &WeightedEcdf, max: usize) -> Vec<f64> {
    let mut p = vec![0.0; max + 1];
    for (x, w) in ecdf.values().iter().zip(ecdf.weights()) {
        let k = *x as usize;
        if k <= max {
            p[k] += w;
        }
    }
    p
}

fn increments(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
    rows.iter()
        .map(|r| if j == 1 { r[0] } else { r[j - 1] - r[j - 2] })
        .collect()
}

fn special_cases(
    cfg: &StationarityConfig,
    sc: &SpecialCasesConfig,
    stream: RngStream,
    report: &mut Report,
) -> Result<()> {
    let is = IsConfig::new(cfg.samples, cfg.ess_floor);
    let mut table = Table::new(
        "special_cases",
        &["case", "sample", "increment", "statistic", "p_value"],
    );

    let geo = sc.geometric.to_params()?;
    require((geo.left * geo.right - 1.0).abs() < 1e-12, || {
        "geometric special case needs c1 c2 = 1".into()
    })?;
    require(geo.bulk.iter().all(|&b| b == geo.bulk[0]), || {
        "geometric special case needs homogeneous labels".into()
    })?;
    let q = geo.bulk[0] * geo.right;
    let run = sample_stationary_is(&geo, is, stream.substream(0))?;
    let heights: Vec<Vec<f64>> = run.samples.iter().map(|s| s.walks.l1.clone()).collect();
    let evolved = evolve_once(&run, &geo, stream.substream(1))?;
    let lw = run.log_weights();
    let max = 200;
    let exact: Vec<f64> = (0..=max as u64).map(|k| geom_pmf(&q, k)).collect();
    let mut worst = 0.0f64;
    for (label, rows) in [("stationary", &heights), ("evolved", &evolved)] {
        for j in 1..=geo.n() {
            let x = increments(rows, j);
            let ecdf = WeightedEcdf::from_log_weights(&x, &lw)?;
            let tv = tv_discrete(&weighted_pmf(&ecdf, max), &exact);
            worst = worst.max(tv);
            table.push([
                "geometric c1 c2 = 1".into(),
                label.into(),
                j.to_string(),
                fmt(tv),
                String::new(),
            ]);
        }
    }
    report.check(Check::below(
        "geometric c1 c2 = 1 increment TV",
        worst,
        sc.tv_tol,
    ));

    let lg = sc.log_gamma.to_params()?;
    require((lg.left + lg.right).abs() < 1e-12, || {
        "log-gamma special case needs u + v = 0".into()
    })?;
    let run = sample_stationary_is(&lg, is, stream.substream(2))?;
    let heights: Vec<Vec<f64>> = run.samples.iter().map(|s| s.walks.l1.clone()).collect();
    let evolved = evolve_once(&run, &lg, stream.substream(3))?;
    let lw = run.log_weights();
    let mut worst = 1.0f64;
    for (label, rows) in [("stationary", &heights), ("evolved", &evolved)] {
        for j in 1..=lg.n() {
            let theta = lg.bulk[j - 1] + lg.right;
            let ecdf = WeightedEcdf::from_log_weights(&increments(rows, j), &lw)?;
            let (stat, p) = ks_one_sample(&ecdf, |x| log_inv_gamma_cdf(theta, x));
            worst = worst.min(p);
            table.push([
                "log-gamma u + v = 0".into(),
                label.into(),
                j.to_string(),
                fmt(stat),
                fmt(p),
            ]);
        }
    }
    report.check(Check::above(
        "log-gamma u + v = 0 increment KS p-value",
        worst,
        cfg.p_floor,
    ));
    report.table(table);
    Ok(())
}

fn ergodicity(erg: &ErgodicityConfig, stream: RngStream, report: &mut Report) -> Result<()> {
    let mut table = Table::new("ergodicity", &["case", "height", "ks"]);
    for (c, case) in erg.cases.iter().enumerate() {
        let params = case.params.to_params()?;
        let n = params.n();
        let start = |d: f64| (1..=n).map(|j| j as f64 * d).collect::<Vec<f64>>();
        let s = stream.substream(c as u64);
        let (a, b): (Vec<Vec<f64>>, Vec<Vec<f64>>) = match params.model {
            ModelKind::GeometricLpp => {
                let int = |v: Vec<f64>| v.into_iter().map(|x| x.round() as i64).collect::<Vec<_>>();
                let conv = |r: Vec<Vec<i64>>| {
                    r.into_iter()
                        .map(|v| v.into_iter().map(|x| x as f64).collect())
                        .collect()
                };
                (
                    conv(run_replicas(
                        &int(start(erg.starts.0)),
                        &params,
                        erg.steps,
                        erg.replicas,
                        s.substream(0),
                    )?),
                    conv(run_replicas(
                        &int(start(erg.starts.1)),
                        &params,
                        erg.steps,
                        erg.replicas,
                        s.substream(1),
                    )?),
                )
            }
            ModelKind::LogGamma => (
                run_replicas_lg(
                    &start(erg.starts.0),
                    &params,
                    erg.steps,
                    erg.replicas,
                    s.substream(0),
                )?,
                run_replicas_lg(
                    &start(erg.starts.1),
                    &params,
                    erg.steps,
                    erg.replicas,
                    s.substream(1),
                )?,
            ),
        };
        let mut worst = 0.0f64;
        for j in 1..=n {
            let d = ks_statistic(
                &WeightedEcdf::unweighted(&column(&a, j - 1))?,
                &WeightedEcdf::unweighted(&column(&b, j - 1))?,
            );
            worst = worst.max(d);
            table.push([case.name.clone(), j.to_string(), fmt(d)]);
        }
        report.check(Check::below(
            format!("{} ergodicity KS", case.name),
            worst,
            erg.ks_tol,
        ));
    }
    report.table(table);
    Ok(())
}

/// Runs `stationarity-test`.
pub fn run(cfg: &StationarityConfig) -> Result<Report> {
    require(cfg.samples > 0, || "samples must be positive".into())?;
    let mut report = Report::new("stationarity-test", cfg.run.seed, cfg);
    let root = RngStream::new(cfg.run.seed, 0);
    let mut table = Table::new(
        "invariance",
        &[
            "case",
            "height",
            "ks",
            "p_value",
            "ess_reference",
            "ess_evolved",
        ],
    );
    for (c, case) in cfg.cases.iter().enumerate() {
        invariance(cfg, case, root.substream(c as u64), &mut report, &mut table)?;
    }
    report.table(table);
    if let Some(sc) = &cfg.special_cases {
        special_cases(cfg, sc, root.substream(100), &mut report)?;
    }
    if let Some(erg) = &cfg.ergodicity {
        ergodicity(erg, root.substream(200), &mut report)?;
    }
    Ok(report)
}
