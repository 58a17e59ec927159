//! Error type shared by the workspace crates.

use crate::path::MoveKind;

/// Failure modes of the operations in this workspace.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside the domain where the model is defined.
    #[error("parameter domain violation: {0}")]
    ParamDomain(String),
    /// A local move was requested where the path does not have the required shape.
    #[error("inadmissible {kind:?} move at vertex {index}")]
    InadmissibleMove { kind: MoveKind, index: usize },
    /// A truncated computation could not certify the requested tolerance.
    #[error("truncation too small: tail bound {bound:e} exceeds tolerance {tol:e}")]
    TruncationTooSmall { bound: f64, tol: f64 },
    /// A quadrature did not reach the requested tolerance.
    #[error("quadrature failed: error estimate {residual:e} exceeds tolerance {tol:e}")]
    QuadratureFailure { residual: f64, tol: f64 },
    /// The boundary parameters lie in the shock region where the requested mass is infinite.
    #[error("boundary parameters lie in the shock region; the requested mass is infinite")]
    ShockRegion,
    /// Importance weights collapsed below the configured effective sample size.
    #[error("effective sample size {ess:.1} is below the floor {floor:.1}")]
    DegenerateWeights { ess: f64, floor: f64 },
    /// A statistic was requested on an empty sample.
    #[error("empty sample")]
    EmptySample,
    /// Every weight of a weighted sample is zero.
    #[error("all weights are zero")]
    AllZeroWeights,
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
