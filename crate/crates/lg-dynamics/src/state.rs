//! Free energies along a down-right path and their local updates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{
    logaddexp, DownRightPath, Error, LocalMove, LogInvGammaSampler, ModelParams, MoveKind, Result,
};

/// Free energies `h(p_j) = log z(p_j)` at the `N + 1` vertices of a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LgState {
    /// The path.
    pub path: DownRightPath,
    /// `h(p_0), ..., h(p_N)`.
    pub values: Vec<f64>,
}

impl LgState {
    /// State on `path` with the given values.
    pub fn new(path: DownRightPath, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), path.n() + 1, "one value per vertex");
        Self { path, values }
    }

    /// State on the horizontal path with `h(p_0) = 0` and the given increments.
    pub fn horizontal(increments: &[f64]) -> Self {
        let mut values = Vec::with_capacity(increments.len() + 1);
        values.push(0.0);
        values.extend_from_slice(increments);
        Self::new(DownRightPath::horizontal(increments.len()), values)
    }

    /// Centered values `h(p_j) - h(p_0)` for `j = 1..N`.
    pub fn increments(&self) -> Vec<f64> {
        self.values[1..]
            .iter()
            .map(|v| v - self.values[0])
            .collect()
    }
}

/// Applies `mv` with a given log-weight `log_w`: the new value is
/// `log_w + logaddexp(west, south)` in the bulk and `log_w + neighbour` on a boundary.
pub fn lg_update_with_weight(state: &LgState, mv: LocalMove, log_w: f64) -> Result<LgState> {
    let path = state.path.apply_local_move(mv)?;
    let j = mv.index;
    let v = &state.values;
    let base = match mv.kind {
        MoveKind::LeftBoundary => v[1],
        MoveKind::RightBoundary => v[j - 1],
        MoveKind::Bulk => logaddexp(v[j - 1], v[j + 1]),
    };
    let mut values = state.values.clone();
    values[j] = base + log_w;
    Ok(LgState { path, values })
}

/// Applies `mv` with a fresh inverse-gamma vertex weight.
pub fn lg_local_update<R: Rng + ?Sized>(
    state: &LgState,
    mv: LocalMove,
    params: &ModelParams,
    rng: &mut R,
) -> Result<LgState> {
    if !state.path.is_admissible(mv) {
        return Err(Error::InadmissibleMove {
            kind: mv.kind,
            index: mv.index,
        });
    }
    let theta = state.path.vertex_weight_param(mv, params);
    let log_w = LogInvGammaSampler::new(theta)?.sample(rng);
    lg_update_with_weight(state, mv, log_w)
}

/// One translation step: every vertex moves once, in the order of
/// [`DownRightPath::tau1_schedule`].
pub fn lg_tau1_step<R: Rng + ?Sized>(
    state: &LgState,
    params: &ModelParams,
    rng: &mut R,
) -> Result<LgState> {
    let mut s = state.clone();
    for mv in state.path.tau1_schedule() {
        s = lg_local_update(&s, mv, params, rng)?;
    }
    Ok(s)
}
