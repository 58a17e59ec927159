//! Passage times along a down-right path and their local updates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{DownRightPath, GeomSampler, LocalMove, ModelParams, MoveKind, Result};

/// Passage times `G(p_j)` at the `N + 1` vertices of a down-right path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LppState {
    /// The path.
    pub path: DownRightPath,
    /// `G(p_0), ..., G(p_N)`.
    pub values: Vec<i64>,
}

impl LppState {
    /// State on `path` with the given values.
    pub fn new(path: DownRightPath, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), path.n() + 1, "one value per vertex");
        Self { path, values }
    }

    /// State on the horizontal path with `G(p_0) = 0` and the given increments.
    pub fn horizontal(increments: &[i64]) -> Self {
        let mut values = Vec::with_capacity(increments.len() + 1);
        values.push(0);
        values.extend_from_slice(increments);
        Self::new(DownRightPath::horizontal(increments.len()), values)
    }

    /// Centered values `G(p_j) - G(p_0)` for `j = 1..N`.
    pub fn increments(&self) -> Vec<i64> {
        self.values[1..]
            .iter()
            .map(|v| v - self.values[0])
            .collect()
    }
}

/// Applies `mv` with a given vertex weight `omega`: the new value is
/// `omega + max(west, south)` in the bulk and `omega + neighbour` on a boundary.
pub fn lpp_update_with_weight(state: &LppState, mv: LocalMove, omega: u64) -> Result<LppState> {
    let path = state.path.apply_local_move(mv)?;
    let j = mv.index;
    let v = &state.values;
    let base = match mv.kind {
        MoveKind::LeftBoundary => v[1],
        MoveKind::RightBoundary => v[j - 1],
        MoveKind::Bulk => v[j - 1].max(v[j + 1]),
    };
    let mut values = state.values.clone();
    values[j] = base + omega as i64;
    Ok(LppState { path, values })
}

/// Applies `mv` with a fresh geometric vertex weight.
pub fn lpp_local_update<R: Rng + ?Sized>(
    state: &LppState,
    mv: LocalMove,
    params: &ModelParams,
    rng: &mut R,
) -> Result<LppState> {
    if !state.path.is_admissible(mv) {
        return Err(stripgibbs_core::Error::InadmissibleMove {
            kind: mv.kind,
            index: mv.index,
        });
    }
    let q = state.path.vertex_weight_param(mv, params);
    let omega = GeomSampler::new(q)?.sample(rng);
    lpp_update_with_weight(state, mv, omega)
}

/// One translation step: every vertex moves once, in the order of
/// [`DownRightPath::tau1_schedule`].
pub fn lpp_tau1_step<R: Rng + ?Sized>(
    state: &LppState,
    params: &ModelParams,
    rng: &mut R,
) -> Result<LppState> {
    let mut s = state.clone();
    for mv in state.path.tau1_schedule() {
        s = lpp_local_update(&s, mv, params, rng)?;
    }
    Ok(s)
}
