//! Distributional checks of the geometric dynamics.

use stripgibbs_core::{
    geom_pmf, DownRightPath, LocalMove, ModelKind, ModelParams, RngStream, Step,
};
use stripgibbs_lpp::{lpp_local_update, run_increment_chain, LppState};
use stripgibbs_stats::chi_square_gof;

fn counts(xs: impl Iterator<Item = u64>, len: usize) -> Vec<u64> {
    let mut c = vec![0u64; len];
    for x in xs {
        let k = (x as usize).min(len - 1);
        c[k] += 1;
    }
    c
}

#[test]
fn bulk_weight_is_geometric_in_label_product() {
    let params = ModelParams::new(ModelKind::GeometricLpp, vec![0.6, 0.7], 1.0, 1.0).unwrap();
    // vertices (1,1), (1,0), (2,0); the move creates (2,1) with weight Geom(a_2 a_1)
    let path = DownRightPath::new(1, vec![Step::Down, Step::Right]).unwrap();
    let state = LppState::new(path, vec![3, 0, 5]);
    let mut rng = RngStream::new(101, 0).rng();
    let draws = (0..100_000).map(|_| {
        let t = lpp_local_update(&state, LocalMove::at(1, 2), &params, &mut rng).unwrap();
        (t.values[1] - 5) as u64
    });
    let c = counts(draws, 60);
    let q = 0.42;
    let probs: Vec<f64> = (0..59).map(|k| geom_pmf(&q, k)).collect();
    let r = chi_square_gof(&c, &probs);
    assert!(r.p_value > 0.01, "{r:?}");
}

#[test]
fn width_one_critical_boundary_gives_geometric_walk() {
    // With c1 c2 = 1 the stationary increment is Geom(a c2); the one-step
    // kernel from a Geom(a c2) draw preserves that law.
    let a = 0.5;
    let (c1, c2) = (0.8, 1.25);
    let params = ModelParams::new(ModelKind::GeometricLpp, vec![a], c1, c2).unwrap();
    let mut rng = RngStream::new(102, 0).rng();
    let g = stripgibbs_core::GeomSampler::new(a * c2).unwrap();
    let draws = (0..100_000).map(|_| {
        let x0 = g.sample(&mut rng) as i64;
        let traj = run_increment_chain(&[x0], &params, 1, &mut rng).unwrap();
        traj[1][0] as u64
    });
    let c = counts(draws, 60);
    let probs: Vec<f64> = (0..59).map(|k| geom_pmf(&(a * c2), k)).collect();
    let r = chi_square_gof(&c, &probs);
    assert!(r.p_value > 0.01, "{r:?}");
}
