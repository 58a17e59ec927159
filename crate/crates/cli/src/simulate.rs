//! `simulate`: weighted stationary samples or a dynamics trajectory as CSV.

use serde::{Deserialize, Serialize};

use stripgibbs_core::{ModelKind, RngStream};
use stripgibbs_lg::run_increment_chain_lg;
use stripgibbs_lpp::run_increment_chain;
use stripgibbs_stationary::{sample_stationary_is, IsConfig};

use crate::config::{require, ParamsSpec, RunSettings};
use crate::error::Result;
use crate::report::{fmt, Check, Report, Table};

/// What to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimulateMode {
    /// Weighted walk pairs from the stationary law on the horizontal path.
    Stationary,
    /// Heights along the horizontal path after each translation step.
    Dynamics,
}

/// Configuration of `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    /// Seed and threads.
    pub run: RunSettings,
    /// Model parameters.
    pub params: ParamsSpec,
    /// What to simulate.
    pub mode: SimulateMode,
    /// Stationary samples.
    pub samples: usize,
    /// Translation steps of the trajectory.
    pub steps: usize,
    /// Initial heights `h(1..=N)` of the trajectory; zeros when `None`.
    pub init: Option<Vec<f64>>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            run: RunSettings::default(),
            params: ParamsSpec::homogeneous(ModelKind::GeometricLpp, 4, 0.4, 0.9, 0.9),
            mode: SimulateMode::Stationary,
            samples: 1000,
            steps: 100,
            init: None,
        }
    }
}

fn columns(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("{prefix}{j}")).collect()
}

/// Runs `simulate`.
pub fn run(cfg: &SimulateConfig) -> Result<Report> {
    let params = cfg.params.to_params()?;
    let n = params.n();
    let mut report = Report::new("simulate", cfg.run.seed, cfg);
    let stream = RngStream::new(cfg.run.seed, 0);
    match cfg.mode {
        SimulateMode::Stationary => {
            require(cfg.samples > 0, || "samples must be positive".into())?;
            let run = sample_stationary_is(&params, IsConfig::new(cfg.samples, 0.0), stream)?;
            let mut header = vec!["log_weight".to_string()];
            header.extend(columns("l1_", n));
            header.extend(columns("l2_", n));
            let mut table = Table {
                name: "samples".into(),
                header,
                rows: Vec::new(),
            };
            for s in &run.samples {
                let row = std::iter::once(fmt(s.log_weight))
                    .chain(s.walks.l1.iter().map(|&x| fmt(x)))
                    .chain(s.walks.l2.iter().map(|&x| fmt(x)));
                table.push(row);
            }
            report.check(Check::info("ESS", run.ess));
            report.check(Check::info("log mean weight", run.log_mean_weight));
            report.table(table);
        }
        SimulateMode::Dynamics => {
            let init = cfg.init.clone().unwrap_or_else(|| vec![0.0; n]);
            require(init.len() == n, || {
                format!("init needs {n} heights, got {}", init.len())
            })?;
            let mut rng = stream.rng();
            let path: Vec<Vec<f64>> = match params.model {
                ModelKind::GeometricLpp => {
                    require(init.iter().all(|x| x.fract() == 0.0), || {
                        "geometric heights must be integers".into()
                    })?;
                    let init: Vec<i64> = init.iter().map(|&x| x as i64).collect();
                    run_increment_chain(&init, &params, cfg.steps, &mut rng)?
                        .into_iter()
                        .map(|v| v.into_iter().map(|x| x as f64).collect())
                        .collect()
                }
                ModelKind::LogGamma => run_increment_chain_lg(&init, &params, cfg.steps, &mut rng)?,
            };
            let mut header = vec!["step".to_string()];
            header.extend(columns("h", n));
            let mut table = Table {
                name: "trajectory".into(),
                header,
                rows: Vec::new(),
            };
            for (k, h) in path.iter().enumerate() {
                table.push(std::iter::once(k.to_string()).chain(h.iter().map(|&x| fmt(x))));
            }
            report.check(Check::info("steps", cfg.steps as f64));
            report.table(table);
        }
    }
    Ok(report)
}
