//! The translation step acting on both layers.
//!
//! One step applies the push-block kernel at every vertex of the path, in the
//! order of [`DownRightPath::tau1_schedule`], so the path returns to itself
//! shifted by `(1, 1)`. First-layer values are drawn from `rng1` with exactly
//! the draws the one-layer dynamics make, so under a shared stream the first
//! layer reproduces the one-layer chain. Second-layer values come from `rng2`.

use rand::Rng;

use stripgibbs_core::{DownRightPath, Error, LocalMove, ModelKind, ModelParams, MoveKind, Result};

use crate::config::TwoLayerConfig;
use crate::kernels::{kernel_bulk, kernel_left, kernel_right, GeomKernel};
use crate::lg_kernels::{kernel_bulk_lg, kernel_left_lg, kernel_right_lg, LgKernel};
use crate::signature::Signature2;

fn check_model(params: &ModelParams, expected: ModelKind) -> Result<()> {
    if params.model != expected {
        return Err(Error::ParamDomain(format!(
            "expected {expected:?} parameters, got {:?}",
            params.model
        )));
    }
    Ok(())
}

fn admissible(path: &DownRightPath, mv: LocalMove) -> Result<()> {
    if !path.is_admissible(mv) {
        return Err(Error::InadmissibleMove {
            kind: mv.kind,
            index: mv.index,
        });
    }
    Ok(())
}

/// Geometric kernel for `mv` in `config`.
pub fn geom_kernel_at(
    config: &TwoLayerConfig<i64>,
    mv: LocalMove,
    params: &ModelParams,
) -> Result<GeomKernel> {
    admissible(&config.path, mv)?;
    let labels = config.path.edge_labels(params);
    let v = &config.values;
    let j = mv.index;
    match mv.kind {
        MoveKind::LeftBoundary => kernel_left(v[1], params.left, labels[0]),
        MoveKind::RightBoundary => kernel_right(v[j - 1], labels[j - 1], params.right),
        MoveKind::Bulk => kernel_bulk(v[j - 1], v[j + 1], labels[j - 1], labels[j]),
    }
}

/// Log-gamma kernel for `mv` in `config`.
pub fn lg_kernel_at(
    config: &TwoLayerConfig<f64>,
    mv: LocalMove,
    params: &ModelParams,
) -> Result<LgKernel> {
    admissible(&config.path, mv)?;
    let labels = config.path.edge_labels(params);
    let v = &config.values;
    let j = mv.index;
    match mv.kind {
        MoveKind::LeftBoundary => kernel_left_lg(v[1], params.left, labels[0]),
        MoveKind::RightBoundary => kernel_right_lg(v[j - 1], labels[j - 1], params.right),
        MoveKind::Bulk => kernel_bulk_lg(v[j - 1], v[j + 1], labels[j - 1], labels[j]),
    }
}

/// Applies one geometric push-block move.
pub fn two_layer_move_geom<R1: Rng + ?Sized, R2: Rng + ?Sized>(
    config: &TwoLayerConfig<i64>,
    mv: LocalMove,
    params: &ModelParams,
    rng1: &mut R1,
    rng2: &mut R2,
) -> Result<TwoLayerConfig<i64>> {
    let k = geom_kernel_at(config, mv, params)?;
    let mut values = config.values.clone();
    values[mv.index] = k.sample(rng1, rng2);
    Ok(TwoLayerConfig {
        path: config.path.apply_local_move(mv)?,
        values,
    })
}

/// Applies one log-gamma push-block move.
pub fn two_layer_move_lg<R1: Rng + ?Sized, R2: Rng + ?Sized>(
    config: &TwoLayerConfig<f64>,
    mv: LocalMove,
    params: &ModelParams,
    rng1: &mut R1,
    rng2: &mut R2,
) -> Result<TwoLayerConfig<f64>> {
    let k = lg_kernel_at(config, mv, params)?;
    let mut values = config.values.clone();
    values[mv.index] = k.sample(rng1, rng2);
    Ok(TwoLayerConfig {
        path: config.path.apply_local_move(mv)?,
        values,
    })
}

/// One geometric translation step on both layers.
pub fn two_layer_tau1_step_geom<R1: Rng + ?Sized, R2: Rng + ?Sized>(
    config: &TwoLayerConfig<i64>,
    params: &ModelParams,
    rng1: &mut R1,
    rng2: &mut R2,
) -> Result<TwoLayerConfig<i64>> {
    check_model(params, ModelKind::GeometricLpp)?;
    let mut c = config.clone();
    for mv in config.path.tau1_schedule() {
        c = two_layer_move_geom(&c, mv, params, rng1, rng2)?;
    }
    Ok(c)
}

/// One log-gamma translation step on both layers.
pub fn two_layer_tau1_step_lg<R1: Rng + ?Sized, R2: Rng + ?Sized>(
    config: &TwoLayerConfig<f64>,
    params: &ModelParams,
    rng1: &mut R1,
    rng2: &mut R2,
) -> Result<TwoLayerConfig<f64>> {
    check_model(params, ModelKind::LogGamma)?;
    let mut c = config.clone();
    for mv in config.path.tau1_schedule() {
        c = two_layer_move_lg(&c, mv, params, rng1, rng2)?;
    }
    Ok(c)
}

/// The flat geometric configuration with every value zero on `path`.
pub fn flat_config_geom(path: DownRightPath) -> TwoLayerConfig<i64> {
    let n = path.n();
    TwoLayerConfig::new(path, vec![Signature2::new(0, 0); n + 1])
}
