use proptest::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use stripgibbs_core::RngStream;
use stripgibbs_kpz::{
    convergence_diagnostic, digamma, sample_hariya_yor, sample_universal_geometric,
    sample_universal_limit, trigamma, DiagnosticConfig, HyConfig, KpzScaling, UniversalScaling,
};
use stripgibbs_stats::ks_one_sample;

#[test]
fn digamma_and_trigamma_reference_values() {
    let euler = 0.577_215_664_901_532_9;
    assert!((digamma(1.0).unwrap() + euler).abs() < 1e-12);
    assert!((trigamma(1.0).unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert!((digamma(0.5).unwrap() + euler + 2.0 * 2f64.ln()).abs() < 1e-12);
    assert!(digamma(0.0).is_err() && trigamma(-1.0).is_err());
}

proptest! {
    #[test]
    fn digamma_recurrence(z in 0.01f64..50.0) {
        prop_assert!((digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z).abs() < 1e-13 * (1.0 + 1.0 / z));
        prop_assert!((trigamma(z).unwrap() - trigamma(z + 1.0).unwrap() - 1.0 / (z * z)).abs() < 1e-12 * (1.0 + 1.0 / (z * z)));
    }
}

#[test]
fn log_inverse_gamma_moments_under_the_scaling() {
    // -psi(alpha + v) = log eps - eps v + O(eps^2), psi_1(alpha + v) = eps - v eps^2 + O(eps^3)
    let v = 0.7;
    for eps in [0.1, 0.05, 0.02, 0.01] {
        let s = KpzScaling::new(eps, 1.0).unwrap();
        let mean = -digamma(s.alpha + v).unwrap();
        let var = trigamma(s.alpha + v).unwrap();
        assert!(
            (mean - eps.ln() + eps * v).abs() < 2.0 * eps * eps,
            "eps {eps}"
        );
        assert!(
            (var - eps + v * eps * eps).abs() < 2.0 * eps.powi(3),
            "eps {eps}"
        );
    }
    let s = KpzScaling::new(0.1, 1.0).unwrap();
    assert_eq!(s.n_steps, 10);
    assert!((s.alpha - 10.5).abs() < 1e-12);
}

#[test]
fn balanced_boundary_gives_drifted_brownian_motion() {
    let (u, v, l) = (-0.6, 0.6, 1.0);
    let run = sample_hariya_yor(
        &HyConfig::new(u, v, l, 100_000),
        &[l],
        RngStream::new(31, 0),
    )
    .unwrap();
    let nd = Normal::new(-v * l, l.sqrt()).unwrap();
    let (_, p) = ks_one_sample(&run.marginals.ecdf(0).unwrap(), |x| nd.cdf(x));
    assert!(p > 0.01, "p = {p}");
}

#[test]
fn grid_refinement_leaves_the_normalization_stable() {
    let (u, v) = (1.0, 0.5);
    let coarse = sample_hariya_yor(
        &HyConfig {
            u,
            v,
            l: 1.0,
            grid_m: 256,
            n: 40_000,
        },
        &[1.0],
        RngStream::new(41, 0),
    )
    .unwrap();
    let fine = sample_hariya_yor(
        &HyConfig {
            u,
            v,
            l: 1.0,
            grid_m: 512,
            n: 40_000,
        },
        &[1.0],
        RngStream::new(42, 0),
    )
    .unwrap();
    let sigma = coarse.log_z_se.hypot(fine.log_z_se);
    assert!(
        (coarse.log_z - fine.log_z).abs() < 2.0 * sigma,
        "{} {} {sigma}",
        coarse.log_z,
        fine.log_z
    );
}

#[test]
fn balanced_boundary_diagnostic_is_gaussian_on_both_sides() {
    let mut cfg = DiagnosticConfig::new(-0.5, 0.5, 1.0, vec![0.05], 100_000);
    cfg.n_boot = 50;
    let t = convergence_diagnostic(&cfg, RngStream::new(51, 0)).unwrap();
    assert!(t.final_ks() < 0.03, "{}", t.final_ks());
}

#[test]
fn discrete_normalization_approaches_the_hariya_yor_one() {
    let mut cfg = DiagnosticConfig::new(1.0, 0.5, 1.0, vec![0.2, 0.05], 50_000);
    cfg.n_boot = 50;
    let t = convergence_diagnostic(&cfg, RngStream::new(61, 0)).unwrap();
    assert!(
        t.z_discrepancy_sigmas() < 3.0,
        "{}",
        t.z_discrepancy_sigmas()
    );
    // the tail-weight proxy does not grow as eps decreases
    assert!(t.rows[1].log_moment_proxy <= t.rows[0].log_moment_proxy + 0.1);
}

#[test]
fn geometric_rescaling_approaches_the_universal_limit() {
    let pts = [0.5, 1.0];
    let lim = sample_universal_limit(1.0, 1.0, 1024, 50_000, &pts, RngStream::new(71, 0)).unwrap();
    let ks: Vec<f64> = [0.05, 0.01, 0.0025]
        .iter()
        .map(|&eps| {
            let s = UniversalScaling::geometric(eps, 0.9, 1.0, 1.0).unwrap();
            let g = sample_universal_geometric(&s, 50_000, &pts, RngStream::new(72, 0)).unwrap();
            g.ks_by_point(&lim).unwrap().into_iter().fold(0.0, f64::max)
        })
        .collect();
    assert!(ks[0] > ks[1] && ks[1] > ks[2], "{ks:?}");
}
