//! Log-gamma polymer on the strip, carried in log-domain.
//!
//! Partition functions satisfy `z(n, m) = w(n, m) (z(n - 1, m) + z(n, m - 1))`
//! in the bulk, with a single predecessor on each boundary, where the vertex
//! weight `w` is inverse-gamma with parameter `alpha_n + alpha_m` in the
//! bulk, `alpha_m + u` on the left boundary and `alpha_m + v` on the right.
//! The free energy `h = log z` is updated with a max-factored log-sum-exp,
//! so values far beyond the range of `f64` exponentials stay exact.

mod chain;
mod state;

pub use chain::{run_increment_chain_lg, run_replicas_lg, HorizontalKernelLg};
pub use state::{lg_local_update, lg_tau1_step, lg_update_with_weight, LgState};
