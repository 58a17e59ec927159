//! Distributional checks of the log-gamma dynamics.

use stripgibbs_core::dist::log_inv_gamma_cdf;
use stripgibbs_core::{
    logaddexp, DownRightPath, LocalMove, LogInvGammaSampler, ModelKind, ModelParams, RngStream,
    Step,
};
use stripgibbs_lg::{lg_local_update, run_increment_chain_lg, LgState};
use stripgibbs_stats::{ks_one_sample, WeightedEcdf};

#[test]
fn bulk_weight_is_inverse_gamma() {
    let params = ModelParams::new(ModelKind::LogGamma, vec![0.7, 1.4], 1.0, 1.0).unwrap();
    let path = DownRightPath::new(1, vec![Step::Down, Step::Right]).unwrap();
    let state = LgState::new(path, vec![0.4, 0.0, -0.3]);
    let mut rng = RngStream::new(201, 0).rng();
    let base = logaddexp(0.4, -0.3);
    let ys: Vec<f64> = (0..100_000)
        .map(|_| {
            lg_local_update(&state, LocalMove::at(1, 2), &params, &mut rng)
                .unwrap()
                .values[1]
                - base
        })
        .collect();
    let e = WeightedEcdf::unweighted(&ys).unwrap();
    let (d, p) = ks_one_sample(&e, |y| log_inv_gamma_cdf(2.1, y));
    assert!(p > 0.01, "D = {d}, p = {p}");
}

#[test]
fn width_one_zero_boundary_sum_gives_log_inverse_gamma_walk() {
    let (alpha, u, v) = (1.0, -0.3, 0.3);
    let params = ModelParams::new(ModelKind::LogGamma, vec![alpha], u, v).unwrap();
    let stat = LogInvGammaSampler::new(alpha + v).unwrap();
    let mut rng = RngStream::new(202, 0).rng();
    let ys: Vec<f64> = (0..100_000)
        .map(|_| {
            let x0 = stat.sample(&mut rng);
            run_increment_chain_lg(&[x0], &params, 1, &mut rng).unwrap()[1][0]
        })
        .collect();
    let e = WeightedEcdf::unweighted(&ys).unwrap();
    let (d, p) = ks_one_sample(&e, |y| log_inv_gamma_cdf(alpha + v, y));
    assert!(p > 0.01, "D = {d}, p = {p}");
}
