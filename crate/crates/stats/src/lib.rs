//! Statistics for weighted Monte Carlo output.
//!
//! Importance-sampling output is a set of values with nonnegative weights.
//! [`WeightedEcdf`] holds such a sample in sorted form. Two weighted samples
//! are compared with a Kolmogorov-Smirnov statistic whose p-value comes from
//! a bootstrap under the pooled null ([`ks_two_sample`]). The crate also
//! provides the effective sample size, bootstrap confidence intervals, a
//! chi-square goodness-of-fit test and the total-variation distance between
//! discrete tables.

pub mod bootstrap;
pub mod ecdf;
pub mod gof;
pub mod ks;
pub mod weights;

pub use bootstrap::{bootstrap, BootstrapSummary};
pub use ecdf::WeightedEcdf;
pub use gof::{chi_square_gof, kolmogorov_q, ks_one_sample, ChiSquareResult};
pub use ks::{ks_statistic, ks_two_sample, KsResult};
pub use weights::{ess, ess_from_log_weights, normalize_log_weights, tv_discrete, tv_discrete_map};
