//! Scaling limits of the log-gamma and geometric stationary measures.
//!
//! Under the intermediate-disorder scaling `alpha = 1/2 + 1/eps`,
//! `N = L / eps`, the rescaled log-gamma walks
//! `B_i(x) = -(x / eps) log eps + L_i(x / eps)` converge to the Hariya-Yor
//! process: two Brownian motions with drifts `-v`, `v` on `[0, L]`,
//! reweighted by `(int_0^L e^{-(B_1 - B_2)} ds)^{-(u+v)}`. Under the
//! diffusive scaling `N = 1/eps` with fixed bulk parameter, both models
//! converge instead to `P_inf`: drifts `-v~`, `v~` on `[0, 1]` reweighted by
//! `e^{(u~ + v~) min (B_1 - B_2)}`.
//!
//! Every sampler here returns weighted marginals at a few observation
//! points, which is all the diagnostics compare.

pub mod brownian;
pub mod diagnostic;
pub mod marginals;
pub mod scaling;
pub mod universal;

pub use brownian::{
    sample_hariya_yor, sample_hariya_yor_paths, trapezoid_log_integral, BrownianPairSample,
    HyConfig, HyRun,
};
pub use diagnostic::{convergence_diagnostic, ConvergenceRow, ConvergenceTable, DiagnosticConfig};
pub use marginals::MarginalSample;
pub use scaling::{rescale_stationary, sample_rescaled_lg, KpzScaling, ScaledPair, ScaledProcess};
pub use stripgibbs_core::special::{checked_digamma as digamma, checked_trigamma as trigamma};
pub use universal::{
    sample_universal_geometric, sample_universal_lg, sample_universal_limit, UniversalScaling,
};
