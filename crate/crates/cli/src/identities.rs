//! `verify-identities`: the exact and quadrature identity suites.
//!
//! Covers the skew Cauchy and Littlewood identities, normalization and
//! first-layer marginals of the push-block kernels, local weight
//! preservation, partition functions and the matrix product algebra.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use stripgibbs_core::dist::log_inv_gamma_cdf;
use stripgibbs_core::rational::{ratio, to_f64};
use stripgibbs_core::{DownRightPath, Error, ModelKind, Rational, RngStream};
use stripgibbs_gibbs::identities::{
    cauchy_lg_lhs_log, cauchy_lg_rhs_log, cauchy_lg_substitution, littlewood_lg_lhs_log,
    littlewood_lg_rhs_log, littlewood_lg_substitution,
};
use stripgibbs_gibbs::kernels::{
    boundary_pmf, boundary_total_mass, boundary_weight_residual, bulk_pmf, bulk_total_mass,
    bulk_weight_residual,
};
use stripgibbs_gibbs::lg_kernels::{
    boundary_weight_residual_lg, bulk_weight_residual_lg, kernel_total_mass_lg,
};
use stripgibbs_gibbs::{
    check_cauchy_geometric, check_cauchy_lg, check_littlewood_geometric, check_littlewood_lg,
    kernel_bulk_lg, kernel_left_lg, partition_z_geom, partition_z_lg_width_one, IdentityCheck,
    Signature2,
};
use stripgibbs_stationary::{gamma_identity_residual, log_partition_lgg_width_one};
use stripgibbs_stats::{ks_one_sample, WeightedEcdf};

use crate::config::{ParamsSpec, RunSettings};
use crate::error::Result;
use crate::mpa_check::{self, AlgebraConfig, MpaCheckConfig, PmfConfig};
use crate::report::{fmt, Check, Report, Table};
use crate::tolerances;

type ISig = Signature2<i64>;
type FSig = Signature2<f64>;

/// A deliberate corruption used to confirm that failures are detected and named.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Raises the `a` exponent of the geometric Cauchy left side by one.
    CauchyExponent,
    /// Raises the `c` exponent of the geometric Littlewood left side by one.
    LittlewoodExponent,
}

/// Geometric identity and kernel settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometricConfig {
    /// Random instances per identity.
    pub trials: usize,
    /// Random instances per weight-preservation check.
    pub weight_trials: usize,
    /// Signature entries are drawn from `-max_entry..=max_entry`.
    pub max_entry: i64,
    /// Largest denominator of the random rational parameters.
    pub max_denominator: i64,
    /// Largest allowed product of two parameters.
    pub max_product: f64,
    /// Overshoots `0..=marginal_depth` are compared in the first-layer marginal.
    pub marginal_depth: i64,
}

impl Default for GeometricConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            weight_trials: 50,
            max_entry: 6,
            max_denominator: 20,
            max_product: 0.9,
            marginal_depth: 12,
        }
    }
}

/// Log-gamma identity and kernel settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LogGammaConfig {
    /// Random instances per quadrature identity.
    pub trials: usize,
    /// Random points for the pointwise substitution identities.
    pub substitution_points: usize,
    /// Random kernels checked for unit mass.
    pub kernel_trials: usize,
    /// Random instances per weight-preservation check.
    pub weight_trials: usize,
    /// Samples in the first-layer marginal test.
    pub marginal_samples: usize,
    /// Parameters are drawn uniformly from this range.
    pub param_range: (f64, f64),
    /// Signature entries are drawn uniformly from `[-spread, spread]`.
    pub spread: f64,
    /// Relative tolerance of the quadrature identities.
    pub identity_tol: f64,
    /// Absolute tolerance of the substitution identities.
    pub substitution_tol: f64,
    /// Tolerance of kernel masses and weight residuals.
    pub kernel_tol: f64,
    /// Smallest acceptable KS p-value.
    pub p_floor: f64,
}

impl Default for LogGammaConfig {
    fn default() -> Self {
        Self {
            trials: 20,
            substitution_points: 1000,
            kernel_trials: 20,
            weight_trials: 50,
            marginal_samples: 100_000,
            param_range: (0.5, 3.0),
            spread: 2.0,
            identity_tol: tolerances::LG_IDENTITY_REL,
            substitution_tol: tolerances::SUBSTITUTION_ABS,
            kernel_tol: tolerances::LG_KERNEL_REL,
            p_floor: tolerances::P_FLOOR,
        }
    }
}

/// Partition function settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartitionConfig {
    /// Geometric parameters in the fan region.
    pub geometric: ParamsSpec,
    /// Random paths compared with the horizontal one.
    pub paths: usize,
    /// Relative tolerance of the geometric comparison.
    pub geometric_tol: f64,
    /// Log-gamma parameters of width one in the fan region.
    pub log_gamma: ParamsSpec,
    /// Relative tolerance against the closed form.
    pub log_gamma_tol: f64,
    /// `(theta, s)` pairs for the zero-mode Gamma integral.
    pub gamma_points: Vec<(f64, f64)>,
    /// Tolerance of the Gamma integral.
    pub gamma_tol: f64,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            geometric: ParamsSpec {
                model: ModelKind::GeometricLpp,
                bulk: vec![0.3, 0.5, 0.4],
                left: 0.6,
                right: 0.7,
            },
            paths: 5,
            geometric_tol: tolerances::GEOM_PARTITION_REL,
            log_gamma: ParamsSpec::homogeneous(ModelKind::LogGamma, 1, 1.5, 0.7, 0.4),
            log_gamma_tol: tolerances::LG_PARTITION_REL,
            gamma_points: vec![(0.3, 0.5), (1.0, 1.0), (2.5, 7.0), (0.8, 0.05)],
            gamma_tol: tolerances::GAMMA_IDENTITY_REL,
        }
    }
}

/// Configuration of `verify-identities`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdentitiesConfig {
    /// Seed and threads.
    pub run: RunSettings,
    /// Geometric settings.
    pub geometric: GeometricConfig,
    /// Log-gamma settings.
    pub log_gamma: LogGammaConfig,
    /// Partition function settings.
    pub partition: PartitionConfig,
    /// Matrix product algebra settings.
    pub algebra: AlgebraConfig,
    /// Matrix product probabilities.
    pub mpa_pmf: PmfConfig,
    /// Optional deliberate corruption.
    pub fault: Option<Fault>,
}

fn rational(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let q = rng.random_range(2..=max_den);
    ratio(rng.random_range(1..q), q)
}

/// Two rationals in `(0, 1)` with product at most `max_product`.
fn rational_pair(rng: &mut ChaCha8Rng, cfg: &GeometricConfig) -> (Rational, Rational) {
    let bound = Rational::from_float(cfg.max_product).expect("finite");
    loop {
        let (a, b) = (
            rational(rng, cfg.max_denominator),
            rational(rng, cfg.max_denominator),
        );
        if &a * &b <= bound {
            return (a, b);
        }
    }
}

fn int_sig(rng: &mut ChaCha8Rng, m: i64) -> ISig {
    let l1 = rng.random_range(-m..=m);
    ISig::new(l1, l1 - rng.random_range(0..=m))
}

/// Neighbours `lambda`, `mu` admitting a common interlacing value.
fn int_pair(rng: &mut ChaCha8Rng, m: i64) -> (ISig, ISig) {
    loop {
        let (lam, mu) = (int_sig(rng, m), int_sig(rng, m));
        if lam.l2.max(mu.l2) <= lam.l1.min(mu.l1) {
            return (lam, mu);
        }
    }
}

fn real_sig(rng: &mut ChaCha8Rng, s: f64) -> FSig {
    FSig::new(rng.random_range(-s..=s), rng.random_range(-s..=s))
}

fn param(rng: &mut ChaCha8Rng, cfg: &LogGammaConfig) -> f64 {
    rng.random_range(cfg.param_range.0..=cfg.param_range.1)
}

/// Relative error of a quadrature identity check, including ones that fail.
fn quadrature_residual(r: stripgibbs_core::Result<IdentityCheck>) -> Result<f64> {
    match r {
        Ok(c) => Ok(c.rel_err),
        Err(Error::QuadratureFailure { residual, .. }) => Ok(residual),
        Err(e) => Err(e.into()),
    }
}

/// `|lhs - rhs|` as a float, never rounding a nonzero difference to zero.
fn exact_gap(lhs: &Rational, rhs: &Rational) -> f64 {
    if lhs == rhs {
        0.0
    } else {
        to_f64(&(lhs - rhs)).abs().max(f64::MIN_POSITIVE)
    }
}

/// Exact skew Cauchy and Littlewood identities at random rational parameters.
pub fn geometric_identities(
    cfg: &IdentitiesConfig,
    stream: RngStream,
    report: &mut Report,
) -> Result<()> {
    let g = &cfg.geometric;
    let mut rng = stream.rng();
    let (mut cauchy, mut littlewood) = (0.0f64, 0.0f64);
    for _ in 0..g.trials {
        let (lam, mu) = (
            int_sig(&mut rng, g.max_entry),
            int_sig(&mut rng, g.max_entry),
        );
        let (a, b) = rational_pair(&mut rng, g);
        let (mut lhs, rhs) = check_cauchy_geometric(lam, mu, &a, &b)?;
        if cfg.fault == Some(Fault::CauchyExponent) {
            lhs *= &a;
        }
        cauchy = cauchy.max(exact_gap(&lhs, &rhs));
    }
    for _ in 0..g.trials {
        let kappa = int_sig(&mut rng, g.max_entry);
        let (a, c) = rational_pair(&mut rng, g);
        let (mut lhs, rhs) = check_littlewood_geometric(kappa, &a, &c)?;
        if cfg.fault == Some(Fault::LittlewoodExponent) {
            lhs *= &c;
        }
        littlewood = littlewood.max(exact_gap(&lhs, &rhs));
    }
    report.check(Check::at_most(
        "skew Cauchy identity (geometric)",
        cauchy,
        tolerances::EXACT,
    ));
    report.check(Check::at_most(
        "skew Littlewood identity (geometric)",
        littlewood,
        tolerances::EXACT,
    ));
    Ok(())
}

/// Log-gamma identities by quadrature and their pointwise substitutions.
pub fn lg_identities(cfg: &LogGammaConfig, stream: RngStream, report: &mut Report) -> Result<()> {
    let mut rng = stream.rng();
    let cases: Vec<_> = (0..cfg.trials)
        .map(|_| {
            (
                real_sig(&mut rng, cfg.spread),
                real_sig(&mut rng, cfg.spread),
                param(&mut rng, cfg),
                param(&mut rng, cfg),
            )
        })
        .collect();
    let mut table = Table::new(
        "lg_identities",
        &[
            "identity",
            "lambda1",
            "lambda2",
            "mu1",
            "mu2",
            "alpha",
            "beta_or_u",
            "rel_err",
        ],
    );
    let mut worst = (0.0f64, 0.0f64);
    for &(lam, mu, alpha, beta) in &cases {
        let r = quadrature_residual(check_cauchy_lg(lam, mu, alpha, beta, cfg.identity_tol))?;
        worst.0 = worst.0.max(r);
        table.push([
            "cauchy".into(),
            fmt(lam.l1),
            fmt(lam.l2),
            fmt(mu.l1),
            fmt(mu.l2),
            fmt(alpha),
            fmt(beta),
            fmt(r),
        ]);
    }
    for &(kappa, _, alpha, u) in &cases {
        let r = quadrature_residual(check_littlewood_lg(kappa, u, alpha, cfg.identity_tol))?;
        worst.1 = worst.1.max(r);
        table.push([
            "littlewood".into(),
            fmt(kappa.l1),
            fmt(kappa.l2),
            String::new(),
            String::new(),
            fmt(alpha),
            fmt(u),
            fmt(r),
        ]);
    }
    report.table(table);
    report.check(Check::below(
        "skew Cauchy identity (log-gamma)",
        worst.0,
        cfg.identity_tol,
    ));
    report.check(Check::below(
        "skew Littlewood identity (log-gamma)",
        worst.1,
        cfg.identity_tol,
    ));

    let (mut cs, mut ls) = (0.0f64, 0.0f64);
    for _ in 0..cfg.substitution_points {
        let (lam, mu) = (
            real_sig(&mut rng, cfg.spread),
            real_sig(&mut rng, cfg.spread),
        );
        let kappa = real_sig(&mut rng, 1.5 * cfg.spread);
        let (alpha, beta) = (param(&mut rng, cfg), param(&mut rng, cfg));
        let u = rng.random_range(-1.0..1.0);
        let l = cauchy_lg_lhs_log(lam, mu, alpha, beta, kappa).exp();
        let r =
            cauchy_lg_rhs_log(lam, mu, alpha, beta, cauchy_lg_substitution(lam, mu, kappa)).exp();
        cs = cs.max((l - r).abs());
        let l = littlewood_lg_lhs_log(kappa, u, alpha, lam).exp();
        let r =
            littlewood_lg_rhs_log(kappa, u, alpha, littlewood_lg_substitution(kappa, lam)).exp();
        ls = ls.max((l - r).abs());
    }
    report.check(Check::below(
        "Cauchy substitution (log-gamma, pointwise)",
        cs,
        cfg.substitution_tol,
    ));
    report.check(Check::below(
        "Littlewood substitution (log-gamma, pointwise)",
        ls,
        cfg.substitution_tol,
    ));
    Ok(())
}

/// Geometric kernel normalization, first-layer marginals and weight preservation, exactly.
pub fn geometric_kernels(
    cfg: &GeometricConfig,
    stream: RngStream,
    report: &mut Report,
) -> Result<()> {
    let mut rng = stream.rng();
    let one = Rational::one();
    let (mut mass, mut marginal) = (0.0f64, 0.0f64);
    for _ in 0..cfg.trials {
        let (lam, mu) = int_pair(&mut rng, cfg.max_entry);
        let (a, b) = rational_pair(&mut rng, cfg);
        mass = mass.max(exact_gap(&bulk_total_mass(lam, mu, &a, &b), &one));
        let kappa = int_sig(&mut rng, cfg.max_entry);
        mass = mass.max(exact_gap(&boundary_total_mass(kappa, &a, &b), &one));

        let q = &a * &b;
        let m1 = lam.l1.max(mu.l1);
        for k in 0..=cfg.marginal_depth {
            let geom = (&one - &q) * num_traits::pow(q.clone(), k as usize);
            let bulk: Rational = (lam.l2.max(mu.l2)..=lam.l1.min(mu.l1))
                .map(|p2| bulk_pmf(ISig::new(m1 + k, p2), lam, mu, &a, &b))
                .fold(Rational::zero(), |s, x| s + x);
            let bdry: Rational = (kappa.l2..=kappa.l1)
                .map(|p2| boundary_pmf(ISig::new(kappa.l1 + k, p2), kappa, &a, &b))
                .fold(Rational::zero(), |s, x| s + x);
            marginal = marginal
                .max(exact_gap(&bulk, &geom))
                .max(exact_gap(&bdry, &geom));
        }
    }
    report.check(Check::at_most(
        "kernel normalization (geometric)",
        mass,
        tolerances::EXACT,
    ));
    report.check(Check::at_most(
        "first-layer marginal (geometric)",
        marginal,
        tolerances::EXACT,
    ));

    let mut weight = 0.0f64;
    for _ in 0..cfg.weight_trials {
        let (lam, mu) = int_pair(&mut rng, cfg.max_entry);
        let (a, b) = rational_pair(&mut rng, cfg);
        let pi = ISig::new(
            lam.l1.max(mu.l1) + rng.random_range(0..4),
            rng.random_range(lam.l2.max(mu.l2)..=lam.l1.min(mu.l1)),
        );
        weight = weight.max(exact_gap(
            &bulk_weight_residual(pi, lam, mu, &a, &b),
            &Rational::zero(),
        ));
        let kappa = int_sig(&mut rng, cfg.max_entry);
        let pi = ISig::new(
            kappa.l1 + rng.random_range(0..4),
            rng.random_range(kappa.l2..=kappa.l1),
        );
        weight = weight.max(exact_gap(
            &boundary_weight_residual(pi, kappa, &a, &b),
            &Rational::zero(),
        ));
    }
    report.check(Check::at_most(
        "weight preservation (geometric)",
        weight,
        tolerances::EXACT,
    ));
    Ok(())
}

/// Log-gamma kernel normalization, first-layer marginal and weight preservation.
pub fn lg_kernels(cfg: &LogGammaConfig, stream: RngStream, report: &mut Report) -> Result<()> {
    let mut rng = stream.rng();
    let mut mass = 0.0f64;
    for _ in 0..cfg.kernel_trials {
        let (lam, mu) = (
            real_sig(&mut rng, cfg.spread),
            real_sig(&mut rng, cfg.spread),
        );
        let (alpha, beta) = (param(&mut rng, cfg), param(&mut rng, cfg));
        let k = kernel_bulk_lg(lam, mu, alpha, beta)?;
        mass = mass.max((kernel_total_mass_lg(&k)? - 1.0).abs());
        let k = kernel_left_lg(real_sig(&mut rng, cfg.spread), param(&mut rng, cfg), alpha)?;
        mass = mass.max((kernel_total_mass_lg(&k)? - 1.0).abs());
    }
    report.check(Check::below(
        "kernel normalization (log-gamma)",
        mass,
        cfg.kernel_tol,
    ));

    // e^{pi_1} = w (e^{lambda_1} + e^{mu_1}) with w inverse-gamma of shape alpha + beta
    let (lam, mu) = (FSig::new(0.4, -0.3), FSig::new(-0.2, -1.1));
    let (alpha, beta) = (1.3, 0.6);
    let k = kernel_bulk_lg(lam, mu, alpha, beta)?;
    let sampler = k.pi2_sampler();
    let mut rng2 = stream.substream(1).rng();
    let pi1: Vec<f64> = (0..cfg.marginal_samples)
        .map(|_| {
            let p1 = k.sample_pi1(&mut rng);
            sampler.sample(&mut rng2);
            p1
        })
        .collect();
    let shift = lam.l1.exp() + mu.l1.exp();
    let (stat, p) = ks_one_sample(&WeightedEcdf::unweighted(&pi1)?, |x| {
        log_inv_gamma_cdf(alpha + beta, x - shift.ln())
    });
    report.check(Check::info(
        "first-layer marginal KS statistic (log-gamma)",
        stat,
    ));
    report.check(Check::above(
        "first-layer marginal KS p-value (log-gamma)",
        p,
        cfg.p_floor,
    ));

    let mut weight = 0.0f64;
    for _ in 0..cfg.weight_trials {
        let (lam, mu) = (
            real_sig(&mut rng, cfg.spread),
            real_sig(&mut rng, cfg.spread),
        );
        let (alpha, beta) = (param(&mut rng, cfg), param(&mut rng, cfg));
        let k = kernel_bulk_lg(lam, mu, alpha, beta)?;
        let pi = FSig::new(
            k.shift + rng.random_range(-1.0..2.0),
            k.pi2.mode() + rng.random_range(-1.0..1.0),
        );
        weight = weight.max(bulk_weight_residual_lg(pi, lam, mu, alpha, beta)?);
        let kappa = real_sig(&mut rng, cfg.spread);
        let u = param(&mut rng, cfg);
        let k = kernel_left_lg(kappa, u, alpha)?;
        let pi = FSig::new(
            k.shift + rng.random_range(-1.0..2.0),
            k.pi2.mode() + rng.random_range(-1.0..1.0),
        );
        weight = weight.max(boundary_weight_residual_lg(pi, kappa, alpha, u)?);
    }
    report.check(Check::below(
        "weight preservation (log-gamma)",
        weight,
        cfg.kernel_tol,
    ));
    Ok(())
}

/// Partition function path independence, the width-one closed form and the zero-mode integral.
pub fn partitions(cfg: &PartitionConfig, stream: RngStream, report: &mut Report) -> Result<()> {
    let params = cfg.geometric.to_params()?;
    let n = params.n();
    let horizontal = partition_z_geom(
        &params,
        &DownRightPath::horizontal(n),
        1e-2 * cfg.geometric_tol,
    )?;
    let mut rng = stream.rng();
    let mut table = Table::new(
        "partition_paths",
        &["path", "z", "truncation_error", "rel_diff"],
    );
    table.push([
        "horizontal".into(),
        fmt(horizontal.value),
        fmt(horizontal.error),
        fmt(0.0),
    ]);
    let mut worst = 0.0f64;
    for i in 0..cfg.paths {
        let path = DownRightPath::random(n, &mut rng);
        let z = partition_z_geom(&params, &path, 1e-2 * cfg.geometric_tol)?;
        let rel = ((z.value - horizontal.value) / horizontal.value).abs();
        worst = worst.max(rel);
        table.push([format!("random {i}"), fmt(z.value), fmt(z.error), fmt(rel)]);
    }
    report.table(table);
    report.check(Check::below(
        "partition path independence (geometric)",
        worst,
        cfg.geometric_tol,
    ));

    let lg = cfg.log_gamma.to_params()?;
    let quad = partition_z_lg_width_one(&lg, 1e-2 * cfg.log_gamma_tol)?;
    let closed = log_partition_lgg_width_one(&lg)?.exp();
    report.check(Check::below(
        "partition closed form (log-gamma, width one)",
        ((quad.value - closed) / closed).abs(),
        cfg.log_gamma_tol,
    ));

    let mut gamma = 0.0f64;
    for &(theta, s) in &cfg.gamma_points {
        gamma = gamma.max(gamma_identity_residual(theta, s)?);
    }
    report.check(Check::below(
        "zero-mode Gamma integral",
        gamma,
        cfg.gamma_tol,
    ));
    Ok(())
}

/// Runs `verify-identities`.
pub fn run(cfg: &IdentitiesConfig) -> Result<Report> {
    let mut report = Report::new("verify-identities", cfg.run.seed, cfg);
    let root = RngStream::new(cfg.run.seed, 0);
    geometric_identities(cfg, root.substream(1), &mut report)?;
    lg_identities(&cfg.log_gamma, root.substream(2), &mut report)?;
    geometric_kernels(&cfg.geometric, root.substream(3), &mut report)?;
    lg_kernels(&cfg.log_gamma, root.substream(4), &mut report)?;
    partitions(&cfg.partition, root.substream(5), &mut report)?;
    let mpa = MpaCheckConfig {
        run: cfg.run.clone(),
        algebra: cfg.algebra.clone(),
        pmf: cfg.mpa_pmf.clone(),
    };
    mpa_check::check_into(&mpa, &mut report)?;
    Ok(report)
}
