//! Geometric last-passage percolation on the strip `{0 <= m <= n <= m + N}`.
//!
//! Passage times satisfy `G(n, m) = w(n, m) + max(G(n - 1, m), G(n, m - 1))`
//! in the bulk, with a single predecessor on each boundary. The vertex weight
//! is `Geom(a_n a_m)` in the bulk, `Geom(a_m c1)` on the left boundary and
//! `Geom(a_m c2)` on the right boundary. Weights are drawn lazily, one per
//! local move.
//!
//! The stationary object is the increment process
//! `(G(tau_k p_j) - G(tau_k p_0))_{j=1..N}` along translates of a down-right
//! path, produced by [`run_increment_chain`].

mod chain;
mod state;

pub use chain::{run_increment_chain, run_replicas, HorizontalKernel};
pub use state::{lpp_local_update, lpp_tau1_step, lpp_update_with_weight, LppState};
