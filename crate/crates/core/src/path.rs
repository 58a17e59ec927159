//! Down-right paths on the strip `{0 <= m <= n <= m + N}` and their local moves.
//!
//! A path is stored as its anchor on the left boundary, the point
//! `(m0, m0)`, together with `N` unit steps. A right step goes from `(n, m)`
//! to `(n + 1, m)`; a down step goes from `(n, m)` to `(n, m - 1)`. Every
//! step increases `n - m` by one, so a path with `N` steps always ends on
//! the right boundary. Vertices are derived on demand.
//!
//! Edge labels are cyclic bulk indices: a right step into `(n, m)` carries
//! index `n`, and a down step leaving `(n, m)` carries index `m`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// One unit step of a down-right path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// `(n, m) -> (n + 1, m)`.
    Right,
    /// `(n, m) -> (n, m - 1)`.
    Down,
}

/// The three kinds of local moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Interior vertex at a down-then-right corner moves by `(1, 1)`.
    Bulk,
    /// First vertex (on the left boundary) moves by `(1, 1)`.
    LeftBoundary,
    /// Last vertex (on the right boundary) moves by `(1, 1)`.
    RightBoundary,
}

/// A local move at vertex `index` of a path (vertices are numbered `0..=N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalMove {
    /// Move kind.
    pub kind: MoveKind,
    /// Index of the vertex that moves.
    pub index: usize,
}

impl LocalMove {
    /// The move at vertex `index` of a path with `n` steps, with the kind
    /// determined by position.
    pub fn at(index: usize, n: usize) -> Self {
        let kind = if index == 0 {
            MoveKind::LeftBoundary
        } else if index == n {
            MoveKind::RightBoundary
        } else {
            MoveKind::Bulk
        };
        Self { kind, index }
    }
}

/// Anchored down-right path on the strip.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DownRightPath {
    /// The path starts at `(m0, m0)`.
    pub m0: i64,
    /// The `N` steps.
    pub steps: Vec<Step>,
}

impl DownRightPath {
    /// Builds a path, checking that it stays inside the strip.
    pub fn new(m0: i64, steps: Vec<Step>) -> Result<Self> {
        let path = Self { m0, steps };
        if path.steps.is_empty() {
            return Err(Error::ParamDomain("a path needs at least one step".into()));
        }
        let downs = path.steps.iter().filter(|s| **s == Step::Down).count() as i64;
        if m0 - downs < 0 {
            return Err(Error::ParamDomain(format!(
                "path leaves the strip: anchor {m0} with {downs} down steps"
            )));
        }
        Ok(path)
    }

    /// The horizontal path from `(0, 0)` to `(N, 0)`.
    pub fn horizontal(n: usize) -> Self {
        Self {
            m0: 0,
            steps: vec![Step::Right; n],
        }
    }

    /// A uniformly random step sequence of length `n`, anchored as low as the strip allows.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let steps: Vec<Step> = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Step::Right
                } else {
                    Step::Down
                }
            })
            .collect();
        let downs = steps.iter().filter(|s| **s == Step::Down).count() as i64;
        Self { m0: downs, steps }
    }

    /// Strip width `N`.
    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// The `N + 1` vertices `(n, m)`.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut p = (self.m0, self.m0);
        out.push(p);
        for s in &self.steps {
            match s {
                Step::Right => p.0 += 1,
                Step::Down => p.1 -= 1,
            }
            out.push(p);
        }
        out
    }

    /// Cyclic bulk index carried by each of the `N` edges.
    pub fn edge_label_indices(&self) -> Vec<i64> {
        let v = self.vertices();
        self.steps
            .iter()
            .enumerate()
            .map(|(k, s)| match s {
                Step::Right => v[k + 1].0,
                Step::Down => v[k].1,
            })
            .collect()
    }

    /// Bulk parameters carried by the `N` edges.
    pub fn edge_labels(&self, params: &ModelParams) -> Vec<f64> {
        self.edge_label_indices()
            .into_iter()
            .map(|i| params.label(i))
            .collect()
    }

    /// Whether `mv` can be applied to this path.
    pub fn is_admissible(&self, mv: LocalMove) -> bool {
        let n = self.steps.len();
        match mv.kind {
            MoveKind::LeftBoundary => mv.index == 0 && self.steps[0] == Step::Right,
            MoveKind::RightBoundary => mv.index == n && self.steps[n - 1] == Step::Down,
            MoveKind::Bulk => {
                mv.index >= 1
                    && mv.index < n
                    && self.steps[mv.index - 1] == Step::Down
                    && self.steps[mv.index] == Step::Right
            }
        }
    }

    /// Applies a local move: the chosen vertex advances by `(1, 1)`.
    pub fn apply_local_move(&self, mv: LocalMove) -> Result<Self> {
        if !self.is_admissible(mv) {
            return Err(Error::InadmissibleMove {
                kind: mv.kind,
                index: mv.index,
            });
        }
        let mut out = self.clone();
        let n = out.steps.len();
        match mv.kind {
            MoveKind::LeftBoundary => {
                out.m0 += 1;
                out.steps[0] = Step::Down;
            }
            MoveKind::RightBoundary => out.steps[n - 1] = Step::Right,
            MoveKind::Bulk => {
                out.steps[mv.index - 1] = Step::Right;
                out.steps[mv.index] = Step::Down;
            }
        }
        Ok(out)
    }

    /// Parameter of the vertex weight created by `mv`: the product (geometric)
    /// or sum (log-gamma) of the two edge labels meeting at the new vertex,
    /// with the boundary parameter standing in for the missing edge at the
    /// two ends.
    pub fn vertex_weight_param(&self, mv: LocalMove, params: &ModelParams) -> f64 {
        let labels = self.edge_label_indices();
        match mv.kind {
            MoveKind::LeftBoundary => params.boundary_weight_param(labels[0], true),
            MoveKind::RightBoundary => {
                params.boundary_weight_param(labels[labels.len() - 1], false)
            }
            MoveKind::Bulk => params.bulk_weight_param(labels[mv.index - 1], labels[mv.index]),
        }
    }

    /// Translation by `(k, k)`.
    pub fn translate(&self, k: i64) -> Self {
        Self {
            m0: self.m0 + k,
            steps: self.steps.clone(),
        }
    }

    /// A sequence of local moves, each vertex moving exactly once, whose
    /// composition is the translation by `(1, 1)`.
    ///
    /// The schedule repeatedly picks the lowest-indexed vertex that has not
    /// moved yet and is admissible. From the horizontal path this is the
    /// left boundary move, then the bulk moves from left to right, then the
    /// right boundary move.
    pub fn tau1_schedule(&self) -> Vec<LocalMove> {
        let n = self.steps.len();
        let mut moved = vec![false; n + 1];
        let mut cur = self.clone();
        let mut out = Vec::with_capacity(n + 1);
        while out.len() < n + 1 {
            let mv = (0..=n)
                .filter(|&j| !moved[j])
                .map(|j| LocalMove::at(j, n))
                .find(|&mv| cur.is_admissible(mv))
                .expect("every down-right path admits a translation schedule");
            moved[mv.index] = true;
            cur = cur.apply_local_move(mv).expect("admissible");
            out.push(mv);
        }
        out
    }
}
