//! Acceptance criteria for the workspace, each evaluated at its stated
//! tolerance from the same library entry points the command-line tool uses.
//!
//! [`run_all`] evaluates every criterion in order and returns one
//! [`Criterion`] per item; [`Criterion::line`] formats the one-line verdict.

use std::time::Instant;

use stripgibbs_cli::error::Result;
use stripgibbs_cli::identities::{self, IdentitiesConfig};
use stripgibbs_cli::kpz::{self, KpzConfig, UniversalityConfig};
use stripgibbs_cli::mpa_check::{self, MpaCheckConfig};
use stripgibbs_cli::report::{Check, Comparison, Report};
use stripgibbs_cli::stationarity::{self, StationarityConfig};
use stripgibbs_core::RngStream;

/// The outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    /// Criterion number.
    pub id: usize,
    /// Short description.
    pub title: &'static str,
    /// Checks that make up the criterion.
    pub checks: Vec<Check>,
    /// Wall-clock time spent evaluating it.
    pub seconds: f64,
    /// Runtime budget, when the criterion has one.
    pub limit: Option<f64>,
}

impl Criterion {
    /// Whether every check passed within the runtime budget.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.limit.is_none_or(|l| self.seconds < l)
    }

    /// One verdict line, followed by one indented line per failed check.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let graded = self
            .checks
            .iter()
            .filter(|c| c.comparison != Comparison::Info)
            .count();
        let limit = self
            .limit
            .map_or(String::new(), |l| format!(", limit {l} s"));
        let mut s = format!(
            "criterion {:>2} {status}  {} [{graded} checks, {:.1} s{limit}]",
            self.id, self.title, self.seconds
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            s += &format!(
                "\n             failed: {} = {:e} (threshold {:e})",
                c.name, c.value, c.threshold
            );
        }
        if let Some(l) = self.limit.filter(|&l| self.seconds >= l) {
            s += &format!(
                "\n             failed: runtime {:.1} s exceeds {l} s",
                self.seconds
            );
        }
        s
    }
}

fn timed<F: FnOnce(&mut Report) -> Result<()>>(f: F) -> (Report, f64) {
    let mut report = Report::new("acceptance", 0, &serde_json::Value::Null);
    let start = Instant::now();
    if let Err(e) = f(&mut report) {
        report.check(Check::holds(format!("ran to completion ({e})"), false));
    }
    (report, start.elapsed().as_secs_f64())
}

fn select(report: &Report, pred: impl Fn(&str) -> bool) -> Vec<Check> {
    report
        .checks
        .iter()
        .filter(|c| pred(&c.name))
        .cloned()
        .collect()
}

fn criterion(
    id: usize,
    title: &'static str,
    report: &Report,
    seconds: f64,
    limit: Option<f64>,
    pred: impl Fn(&str) -> bool,
) -> Criterion {
    let checks = select(report, pred);
    assert!(!checks.is_empty(), "criterion {id} selected no checks");
    Criterion {
        id,
        title,
        checks,
        seconds,
        limit,
    }
}

fn identity_criteria(out: &mut Vec<Criterion>) {
    let cfg = IdentitiesConfig::default();
    let root = RngStream::new(cfg.run.seed, 0);

    let (r, t) = timed(|rep| identities::geometric_identities(&cfg, root.substream(1), rep));
    out.push(criterion(
        1,
        "skew Cauchy identity, geometric, exact",
        &r,
        t,
        Some(1.0),
        |n| n.contains("Cauchy"),
    ));
    out.push(criterion(
        2,
        "skew Littlewood identity, geometric, exact",
        &r,
        t,
        Some(1.0),
        |n| n.contains("Littlewood"),
    ));

    let (r, t) = timed(|rep| identities::lg_identities(&cfg.log_gamma, root.substream(2), rep));
    out.push(criterion(
        3,
        "log-gamma Cauchy and Littlewood identities",
        &r,
        t,
        Some(60.0),
        |_| true,
    ));

    let (g, tg) =
        timed(|rep| identities::geometric_kernels(&cfg.geometric, root.substream(3), rep));
    let (l, tl) = timed(|rep| identities::lg_kernels(&cfg.log_gamma, root.substream(4), rep));
    let mut both = g.clone();
    l.checks.iter().cloned().for_each(|c| both.check(c));
    out.push(criterion(
        4,
        "kernel normalization",
        &both,
        tg + tl,
        Some(60.0),
        |n| n.starts_with("kernel normalization"),
    ));
    out.push(criterion(
        5,
        "first-layer marginals",
        &both,
        tg + tl,
        None,
        |n| n.starts_with("first-layer marginal"),
    ));
    out.push(criterion(
        6,
        "weight preservation",
        &both,
        tg + tl,
        None,
        |n| n.starts_with("weight preservation"),
    ));

    let (r, t) = timed(|rep| identities::partitions(&cfg.partition, root.substream(5), rep));
    out.push(criterion(
        7,
        "partition functions and zero-mode integral",
        &r,
        t,
        None,
        |_| true,
    ));

    let (r, t) = timed(|rep| mpa_check::check_into(&MpaCheckConfig::default(), rep));
    out.push(criterion(
        8,
        "matrix product algebra and probabilities",
        &r,
        t,
        Some(30.0),
        |_| true,
    ));
}

fn stationarity_criteria(out: &mut Vec<Criterion>) {
    let base = StationarityConfig::default();
    let only = |names: &[&str]| StationarityConfig {
        cases: base
            .cases
            .iter()
            .filter(|c| names.contains(&c.name.as_str()))
            .cloned()
            .collect(),
        special_cases: None,
        ergodicity: None,
        ..base.clone()
    };
    let run = |cfg: StationarityConfig| {
        timed(|rep| {
            stationarity::run(&cfg).map(|r| r.checks.into_iter().for_each(|c| rep.check(c)))
        })
    };

    let (r, t) = run(only(&["geometric fan", "log-gamma fan"]));
    out.push(criterion(
        9,
        "stationarity under one step, fan region",
        &r,
        t,
        None,
        |_| true,
    ));
    let (r, t) = run(only(&["geometric shock", "log-gamma shock"]));
    out.push(criterion(
        10,
        "stationarity under one step, shock region",
        &r,
        t,
        None,
        |_| true,
    ));
    let (r, t) = run(StationarityConfig {
        cases: vec![],
        ergodicity: None,
        ..base.clone()
    });
    out.push(criterion(
        11,
        "special cases c1 c2 = 1 and u + v = 0",
        &r,
        t,
        None,
        |_| true,
    ));
    let (r, t) = run(StationarityConfig {
        cases: vec![],
        special_cases: None,
        ..base.clone()
    });
    out.push(criterion(
        12,
        "ergodicity from two starts",
        &r,
        t,
        None,
        |_| true,
    ));
}

fn kpz_criteria(out: &mut Vec<Criterion>) {
    let cfg = KpzConfig::default();
    let (r, t) =
        timed(|rep| kpz::run(&cfg).map(|r| r.checks.into_iter().for_each(|c| rep.check(c))));
    out.push(criterion(
        13,
        "convergence to the open KPZ stationary measure",
        &r,
        t,
        Some(900.0),
        |_| true,
    ));

    let u = UniversalityConfig::default();
    let (r, t) = timed(|rep| {
        kpz::universality_into(&u, RngStream::new(cfg.run.seed, 0).substream(100), rep)
    });
    out.push(criterion(
        14,
        "universality of the rescaled limit",
        &r,
        t,
        None,
        |_| true,
    ));
}

/// Evaluates every criterion in order.
pub fn run_all() -> Vec<Criterion> {
    let mut out = Vec::new();
    identity_criteria(&mut out);
    stationarity_criteria(&mut out);
    kpz_criteria(&mut out);
    out
}
