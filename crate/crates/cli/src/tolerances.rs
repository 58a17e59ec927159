//! Default acceptance thresholds.
//!
//! Every threshold a command checks against is defined here and copied into
//! the command's default configuration, so a report always shows the value
//! that was applied.

/// Exact rational identities must agree with zero residual.
pub const EXACT: f64 = 0.0;

/// Relative error of a two-dimensional quadrature identity check.
pub const LG_IDENTITY_REL: f64 = 1e-8;

/// Pointwise agreement of integrands under the measure-preserving substitutions.
/// Both sides are sums of a handful of `exp`, `log` and `lgamma` terms.
pub const SUBSTITUTION_ABS: f64 = 1e-12;

/// Kernel normalization and weight preservation by nested quadrature.
pub const LG_KERNEL_REL: f64 = 1e-6;

/// Width-one log-gamma partition function against the gamma product.
pub const LG_PARTITION_REL: f64 = 1e-6;

/// Geometric partition function path independence, relative.
pub const GEOM_PARTITION_REL: f64 = 1e-8;

/// One-dimensional gamma integral behind the zero mode.
pub const GAMMA_IDENTITY_REL: f64 = 1e-8;

/// Quadratic algebra residual on the certified block.
pub const MPA_RESIDUAL: f64 = 1e-10;

/// Matrix product probabilities against enumeration.
pub const MPA_PMF_ABS: f64 = 1e-8;

/// Smallest acceptable p-value of a goodness-of-fit or two-sample test.
pub const P_FLOOR: f64 = 0.01;

/// Smallest acceptable effective sample size of an importance run.
pub const ESS_FLOOR: f64 = 1e3;

/// Total variation between an estimated and an exact increment pmf.
pub const TV_SPECIAL_CASE: f64 = 0.01;

/// KS distance between terminal laws of chains from different starts.
pub const ERGODICITY_KS: f64 = 0.02;

/// Final KS distance of the scaling-limit diagnostics.
pub const LIMIT_KS: f64 = 0.05;
