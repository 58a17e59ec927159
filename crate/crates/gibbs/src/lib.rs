//! Two-layer Gibbs measures on a rotated down-right path.
//!
//! A down-right path with vertices `p_0, ..., p_N` carries two layers of
//! values `lambda_1^(j)`, `lambda_2^(j)`. Each edge contributes solid-edge
//! weights on both layers and a dashed-edge weight coupling the layers; the
//! two ends carry arc weights in the boundary parameters. The geometric
//! model uses `a^{x-y} 1{x >= y}` for solid edges, an indicator for dashed
//! edges and `c^{lambda_1 - lambda_2}` for arcs. The log-gamma model uses
//! `exp(-alpha (x-y) - e^{-(x-y)})`, `exp(-e^{-(x-y)})` and
//! `exp(-u (lambda_1 - lambda_2))`.
//!
//! The crate provides:
//!
//! * the weights themselves ([`config`]);
//! * the length-two skew Cauchy and Littlewood identities, exactly in
//!   rationals for the geometric model and by quadrature for the log-gamma
//!   model ([`identities`]);
//! * the push-block kernels that update one vertex of both layers while
//!   preserving the local weight, with samplers ([`kernels`], [`lg_kernels`]);
//! * the composed translation step on both layers ([`dynamics`]);
//! * partition functions with the left value pinned ([`partition`]).

pub mod config;
pub mod dynamics;
pub mod identities;
pub mod kernels;
pub mod lg_kernels;
pub mod partition;
pub mod pi2;
pub mod signature;

pub use config::{log_wt_two_layer, wt_two_layer_exact, TwoLayerConfig};
pub use dynamics::{two_layer_tau1_step_geom, two_layer_tau1_step_lg};
pub use identities::{
    check_cauchy_geometric, check_cauchy_lg, check_littlewood_geometric, check_littlewood_lg,
    IdentityCheck,
};
pub use kernels::{kernel_bulk, kernel_left, kernel_right, GeomKernel};
pub use lg_kernels::{kernel_bulk_lg, kernel_left_lg, kernel_right_lg, LgKernel};
pub use partition::{
    partition_z_geom, partition_z_lg_width_one, schur_upper_bound, PartitionEstimate,
};
pub use signature::Signature2;
