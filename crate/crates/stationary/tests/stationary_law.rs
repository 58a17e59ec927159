//! The reweighted walk laws against exact enumeration, the two-layer Gibbs
//! weights and the dynamics.

use proptest::prelude::*;

use stripgibbs_core::rational::{ratio, to_f64};
use stripgibbs_core::{DownRightPath, ModelKind, ModelParams, Rational, RngStream};
use stripgibbs_gibbs::{wt_two_layer_exact, Signature2, TwoLayerConfig};
use stripgibbs_lpp::{lpp_tau1_step, LppState};
use stripgibbs_stationary::walks::ToF64;
use stripgibbs_stationary::{
    exact_pmf_lpp_small_n, hat_weight_lpp, sample_stationary_is, sample_stationary_is_lg, IsConfig,
    WalkPair,
};
use stripgibbs_stats::{ks_two_sample, WeightedEcdf};

fn lift(delta: i64, w: &WalkPair<i64>) -> TwoLayerConfig<i64> {
    let values = (0..=w.n())
        .map(|j| Signature2::new(w.l1_at(j), w.l2_at(j) - delta))
        .collect();
    TwoLayerConfig::new(DownRightPath::horizontal(w.n()), values)
}

#[test]
fn hat_weight_is_two_layer_weight() {
    let labels = [ratio(1, 3), ratio(2, 5)];
    let (c1, c2) = (ratio(4, 5), ratio(9, 10));
    let mut checked = 0;
    for a1 in 0..4 {
        for a2 in 0..4 {
            for b1 in 0..4 {
                for b2 in 0..4 {
                    let w = WalkPair::from_increments(&[a1, a2], &[b1, b2]);
                    for delta in 0..8 {
                        let lhs = hat_weight_lpp(delta, &w, &labels, &c1, &c2);
                        let rhs = wt_two_layer_exact(&lift(delta, &w), &labels, &c1, &c2);
                        assert_eq!(lhs, rhs, "{w:?} delta={delta}");
                        checked += usize::from(lhs != Rational::from_integer(0.into()));
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn importance_sampling_matches_enumeration() {
    let params = ModelParams::homogeneous(ModelKind::GeometricLpp, 2, 0.4, 0.7, 1.2).unwrap();
    let exact = exact_pmf_lpp_small_n(&params.bulk, &0.7, &1.2, &1e-12).unwrap();
    let mean_exact: f64 = exact.pmf.iter().map(|(x, p)| x[0] as f64 * p).sum();
    let run =
        sample_stationary_is(&params, IsConfig::new(50_000, 1e3), RngStream::new(11, 0)).unwrap();
    let ecdf = run.ecdf_l1(1).unwrap();
    let sd = (ecdf.expect(|x| x * x) - ecdf.mean().powi(2)).sqrt() / ecdf.ess().sqrt();
    assert!(
        (ecdf.mean() - mean_exact).abs() < 3.0 * sd,
        "{} vs {mean_exact} (sd {sd})",
        ecdf.mean()
    );
}

#[test]
fn exact_width_one_marginal_is_geometric_in_rationals() {
    let exact = exact_pmf_lpp_small_n(
        &[ratio(1, 2)],
        &ratio(3, 2),
        &ratio(1, 2),
        &ratio(1, 1_000_000),
    )
    .unwrap();
    for k in 0..5i64 {
        let p = to_f64(&exact.pmf[&vec![k]]);
        let expect = 0.75 * 0.25f64.powi(k as i32);
        assert!(
            (p - expect).abs() <= 2.0 * to_f64(&exact.tail_rel) + 1e-15,
            "{k}: {p} vs {expect}"
        );
    }
}

#[test]
fn log_gamma_balanced_boundaries_have_full_ess() {
    let params = ModelParams::homogeneous(ModelKind::LogGamma, 3, 1.0, -0.25, 0.25).unwrap();
    let run = sample_stationary_is_lg(
        &params,
        &params.bulk,
        IsConfig::new(10_000, 1.0),
        RngStream::new(5, 0),
    )
    .unwrap();
    assert!((run.ess - 10_000.0).abs() < 1e-6);
}

#[test]
fn stationary_heights_survive_one_step() {
    let params = ModelParams::homogeneous(ModelKind::GeometricLpp, 3, 0.4, 0.9, 0.9).unwrap();
    let run =
        sample_stationary_is(&params, IsConfig::new(20_000, 1e3), RngStream::new(3, 0)).unwrap();
    let mut rng = RngStream::new(3, 1).rng();
    let evolved: Vec<Vec<f64>> = run
        .samples
        .iter()
        .map(|s| {
            let init: Vec<i64> = s.walks.l1.iter().map(|&x| x as i64).collect();
            let next = lpp_tau1_step(&LppState::horizontal(&init), &params, &mut rng).unwrap();
            next.increments().iter().map(|&x| x.to_f64()).collect()
        })
        .collect();
    let lw = run.log_weights();
    for j in 1..=3 {
        let before = run.ecdf_l1(j).unwrap();
        let after = WeightedEcdf::from_log_weights(
            &evolved.iter().map(|v| v[j - 1]).collect::<Vec<_>>(),
            &lw,
        )
        .unwrap();
        let ks = ks_two_sample(&before, &after, 99, RngStream::new(3, 10 + j as u64));
        assert!(ks.p_value > 0.01, "coordinate {j}: {ks:?}");
    }
}

proptest! {
    #[test]
    fn weighted_mean_ignores_weight_scale(shift in -50.0f64..50.0) {
        let params = ModelParams::homogeneous(ModelKind::GeometricLpp, 2, 0.3, 1.1, 0.8).unwrap();
        let run = sample_stationary_is(&params, IsConfig::new(500, 1.0), RngStream::new(8, 0)).unwrap();
        let values: Vec<f64> = run.samples.iter().map(|s| s.walks.l1_at(2)).collect();
        let lw = run.log_weights();
        let moved: Vec<f64> = lw.iter().map(|x| x + shift).collect();
        let a = WeightedEcdf::from_log_weights(&values, &lw).unwrap().mean();
        let b = WeightedEcdf::from_log_weights(&values, &moved).unwrap().mean();
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
    }
}
