//! `kpz-limit`: rescaled log-gamma stationary walks against the Hariya-Yor
//! limit along decreasing spacings, with an optional universality section.

use serde::{Deserialize, Serialize};

use stripgibbs_core::RngStream;
use stripgibbs_kpz::{
    convergence_diagnostic, sample_universal_geometric, sample_universal_lg,
    sample_universal_limit, DiagnosticConfig, MarginalSample, UniversalScaling,
};

use crate::config::{require, RunSettings};
use crate::error::Result;
use crate::report::{fmt, Check, Report, Table};
use crate::tolerances;

/// Boundary parameters of one diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryCase {
    /// Left boundary parameter.
    pub u: f64,
    /// Right boundary parameter.
    pub v: f64,
}

/// Rescaled geometric and log-gamma walks against the universal limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UniversalityConfig {
    /// Limit boundary parameters.
    pub case: BoundaryCase,
    /// Spacing.
    pub epsilon: f64,
    /// Samples per model and for the limit.
    pub samples: usize,
    /// Grid intervals of the limit sampler.
    pub grid_m: usize,
    /// Observation points in `[0, 1]`.
    pub points: Vec<f64>,
    /// Bulk parameter of the geometric model.
    pub geometric_a: f64,
    /// Bulk parameter of the log-gamma model.
    pub log_gamma_alpha: f64,
    /// Largest acceptable KS distance.
    pub ks_tol: f64,
}

impl Default for UniversalityConfig {
    fn default() -> Self {
        Self {
            case: BoundaryCase { u: 1.0, v: 1.0 },
            epsilon: 0.05,
            samples: 200_000,
            grid_m: 1024,
            points: vec![0.25, 0.5, 1.0],
            geometric_a: 0.9,
            log_gamma_alpha: 5.0,
            ks_tol: tolerances::LIMIT_KS,
        }
    }
}

/// Configuration of `kpz-limit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KpzConfig {
    /// Seed and threads.
    pub run: RunSettings,
    /// Boundary parameters to diagnose.
    pub cases: Vec<BoundaryCase>,
    /// Interval length.
    pub l: f64,
    /// Spacings, in decreasing order.
    pub epsilons: Vec<f64>,
    /// Samples per spacing and for the limit.
    pub samples: usize,
    /// Grid intervals of the limit sampler.
    pub grid_m: usize,
    /// Observation points in `[0, l]`.
    pub points: Vec<f64>,
    /// Bootstrap replicates for the KS intervals.
    pub n_boot: usize,
    /// Largest acceptable KS distance at the last spacing.
    pub ks_tol: f64,
    /// Universality section; omitted when `null`.
    pub universality: Option<UniversalityConfig>,
}

impl Default for KpzConfig {
    fn default() -> Self {
        Self {
            run: RunSettings::default(),
            cases: vec![
                BoundaryCase { u: 1.0, v: 1.0 },
                BoundaryCase { u: -0.3, v: 0.1 },
            ],
            l: 1.0,
            epsilons: vec![0.2, 0.1, 0.05],
            samples: 100_000,
            grid_m: 1024,
            points: vec![0.25, 0.5, 1.0],
            n_boot: 1000,
            ks_tol: tolerances::LIMIT_KS,
            universality: None,
        }
    }
}

fn label(c: BoundaryCase) -> String {
    format!("u={} v={}", c.u, c.v)
}

fn diagnose(
    cfg: &KpzConfig,
    case: BoundaryCase,
    stream: RngStream,
    report: &mut Report,
    table: &mut Table,
) -> Result<()> {
    let mut d = DiagnosticConfig::new(case.u, case.v, cfg.l, cfg.epsilons.clone(), cfg.samples);
    d.grid_m = cfg.grid_m;
    d.points = cfg.points.clone();
    d.n_boot = cfg.n_boot;
    let t = convergence_diagnostic(&d, stream)?;
    let name = label(case);
    for r in &t.rows {
        table.push([
            name.clone(),
            fmt(r.epsilon),
            r.n_steps.to_string(),
            fmt(r.alpha),
            fmt(r.ess),
            fmt(r.ks),
            fmt(r.ks_lo),
            fmt(r.ks_hi),
            fmt(r.log_z_discrete),
            fmt(r.log_z_discrete_se),
            fmt(r.log_moment_proxy),
        ]);
    }
    report.check(Check::info(format!("{name} limit ESS"), t.hy_ess));
    report.check(Check::info(format!("{name} limit log Z"), t.hy_log_z));
    report.check(Check::info(
        format!("{name} log Z discrepancy in standard errors"),
        t.z_discrepancy_sigmas(),
    ));
    if t.rows.len() < 2 {
        report.check(Check::info(format!("{name} KS"), t.final_ks()));
    } else {
        report.check(Check::holds(
            format!("{name} KS non-increasing within bootstrap intervals"),
            t.trend_ok(),
        ));
        report.check(Check::below(
            format!("{name} final KS"),
            t.final_ks(),
            cfg.ks_tol,
        ));
    }
    Ok(())
}

fn max_ks(a: &MarginalSample, b: &MarginalSample) -> Result<f64> {
    Ok(a.ks_by_point(b)?.into_iter().fold(0.0, f64::max))
}

/// Appends the universality comparison to `report`.
pub fn universality_into(
    u: &UniversalityConfig,
    stream: RngStream,
    report: &mut Report,
) -> Result<()> {
    require(u.points.iter().all(|x| (0.0..=1.0).contains(x)), || {
        "universality points must lie in [0, 1]".into()
    })?;
    let (ut, vt) = (u.case.u, u.case.v);
    let limit =
        sample_universal_limit(ut, vt, u.grid_m, u.samples, &u.points, stream.substream(0))?;
    let geo = UniversalScaling::geometric(u.epsilon, u.geometric_a, ut, vt)?;
    let geo = sample_universal_geometric(&geo, u.samples, &u.points, stream.substream(1))?;
    let lg = UniversalScaling::log_gamma(u.epsilon, u.log_gamma_alpha, ut, vt)?;
    let lg = sample_universal_lg(&lg, u.samples, &u.points, stream.substream(2))?;
    let mut table = Table::new("universality", &["model", "point", "ks", "ess"]);
    for (name, s) in [("geometric", &geo), ("log-gamma", &lg)] {
        let ess = s.ess()?;
        for (x, d) in u.points.iter().zip(s.ks_by_point(&limit)?) {
            table.push([name.into(), fmt(*x), fmt(d), fmt(ess)]);
        }
        report.check(Check::below(
            format!("universality {name} KS"),
            max_ks(s, &limit)?,
            u.ks_tol,
        ));
    }
    report.table(table);
    Ok(())
}

/// Runs `kpz-limit`.
pub fn run(cfg: &KpzConfig) -> Result<Report> {
    require(!cfg.epsilons.is_empty(), || {
        "at least one spacing is required".into()
    })?;
    require(cfg.epsilons.windows(2).all(|w| w[1] < w[0]), || {
        "spacings must be strictly decreasing".into()
    })?;
    let mut report = Report::new("kpz-limit", cfg.run.seed, cfg);
    let root = RngStream::new(cfg.run.seed, 0);
    let mut table = Table::new(
        "convergence",
        &[
            "case",
            "epsilon",
            "n_steps",
            "alpha",
            "ess",
            "ks",
            "ks_lo",
            "ks_hi",
            "log_z_discrete",
            "log_z_discrete_se",
            "log_moment_proxy",
        ],
    );
    for (i, &case) in cfg.cases.iter().enumerate() {
        diagnose(cfg, case, root.substream(i as u64), &mut report, &mut table)?;
    }
    report.table(table);
    if let Some(u) = &cfg.universality {
        universality_into(u, root.substream(100), &mut report)?;
    }
    Ok(report)
}
