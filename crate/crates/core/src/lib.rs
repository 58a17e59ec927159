//! Core building blocks for the strip last-passage and log-gamma polymer models.
//!
//! The crate provides model parameters with their domain checks, down-right
//! paths on the strip `{0 <= m <= n <= m + N}` together with the three kinds
//! of local moves, the geometric and log-inverse-gamma distributions,
//! log-domain helpers, special functions, quadrature on windows and
//! reproducible random streams.
//!
//! Numerical helpers that make sense for several scalar types are generic
//! over [`Real`] (floating point) or over `num_traits::Num` (floating point
//! and exact rationals). Concrete aliases [`Float`] and [`Rational`] name the
//! two instantiations used throughout the workspace.

pub mod dist;
pub mod error;
pub mod logspace;
pub mod params;
pub mod path;
pub mod quad;
pub mod rational;
pub mod rng;
pub mod scalar;
pub mod special;

pub use dist::{
    geom_pmf, log_inv_gamma_logpdf, sample_geom, sample_log_inv_gamma, GeomSampler,
    LogInvGammaSampler,
};
pub use error::{Error, Result};
pub use logspace::{log_gamma_weight, logaddexp, logsumexp};
pub use params::{ModelKind, ModelParams};
pub use path::{DownRightPath, LocalMove, MoveKind, Step};
pub use rng::RngStream;
pub use scalar::Real;

/// Floating point type used by simulations and quadrature.
pub type Float = f64;

/// Exact rational type used by the geometric identity checks.
pub type Rational = num_rational::BigRational;
