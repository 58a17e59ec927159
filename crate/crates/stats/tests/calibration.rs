//! Null calibration of the bootstrap two-sample test.

use rand_distr::{Distribution, StandardNormal};
use stripgibbs_core::RngStream;
use stripgibbs_stats::{ks_two_sample, WeightedEcdf};

#[test]
fn same_distribution_rarely_rejected() {
    let n = 100_000;
    let reps = 100;
    let mut passes = 0;
    for r in 0..reps {
        let mut rng = RngStream::new(2024, r).rng();
        let a: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let ea = WeightedEcdf::unweighted(&a).unwrap();
        let eb = WeightedEcdf::unweighted(&b).unwrap();
        let res = ks_two_sample(&ea, &eb, 99, RngStream::new(7, r));
        if res.p_value > 0.01 {
            passes += 1;
        }
    }
    assert!(passes >= 98, "{passes}/{reps} passed");
}

#[test]
fn weighted_sample_against_its_target() {
    // Draw X ~ N(0,1) and reweight by e^{X - 1/2}, which targets N(1,1).
    let n = 50_000;
    let mut rng = RngStream::new(99, 0).rng();
    let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let lw: Vec<f64> = x.iter().map(|v| v - 0.5).collect();
    let y: Vec<f64> = (0..n)
        .map(|_| {
            1.0 + {
                let z: f64 = StandardNormal.sample(&mut rng);
                z
            }
        })
        .collect();
    let ex = WeightedEcdf::from_log_weights(&x, &lw).unwrap();
    let ey = WeightedEcdf::unweighted(&y).unwrap();
    let res = ks_two_sample(&ex, &ey, 499, RngStream::new(99, 1));
    assert!(res.p_value > 0.01, "{res:?}");
    let ez = WeightedEcdf::unweighted(&x).unwrap();
    let bad = ks_two_sample(&ez, &ey, 499, RngStream::new(99, 2));
    assert!(bad.p_value < 0.01);
}
