//! Stationary measures of the strip models as reweighted pairs of random walks.
//!
//! Let `L_1`, `L_2` be independent walks from `0` with `N` increments whose
//! laws are given by the edge labels `b_1, ..., b_N` of the horizontal path:
//! `Geom(b_j)` increments for geometric last passage percolation and
//! `log Gamma^{-1}(b_j)` increments for the log-gamma polymer. The stationary
//! law of the height increments is the `L_1`-marginal of that pair,
//! reweighted by
//!
//! * `V = (c1 c2)^{max_j (L_2(j) - L_1(j-1))} c2^{L_1(N) - L_2(N)}` (geometric),
//! * `V = (sum_j e^{L_2(j) - L_1(j-1)})^{-(u+v)} e^{-v (L_1(N) - L_2(N))}` (log-gamma).
//!
//! The crate evaluates `V`, samples the reweighted law by self-normalized
//! importance sampling (with a Metropolis fallback), enumerates it exactly
//! for small widths, and samples the zero mode that lifts a walk pair back
//! to a two-layer configuration.

pub mod exact;
pub mod importance;
pub mod lg_small;
pub mod mcmc;
pub mod walks;
pub mod zero_mode;

pub use exact::{exact_pmf_lpp_small_n, ExactPmf};
pub use importance::{
    sample_stationary_is, sample_stationary_is_lg, sample_stationary_is_lpp, IsConfig, IsRun,
};
pub use lg_small::{
    log_partition_lgg_width_one, log_pdf_lgg_small_n, normalization_lgg_width_one,
    WidthOneNormalization,
};
pub use mcmc::{sample_stationary_mcmc, McmcConfig};
pub use walks::{log_v_lgg, log_v_lpp, WalkPair, WeightedSample};
pub use zero_mode::{
    gamma_identity_residual, hat_weight_lpp, sample_delta_lg, sample_delta_lpp,
    summed_hat_weight_lpp, ZeroMode,
};
