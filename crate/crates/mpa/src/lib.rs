//! Matrix product form of the geometric stationary measure.
//!
//! With first-layer increments `x_i = |lambda_1^(i) - lambda_1^(i-1)|` and
//! gaps `n_i = lambda_1^(i) - lambda_2^(i)`, the two-layer weight of a
//! configuration on a down-right path is
//! `w(n_0) prod_i M^{dir_i}_{x_i}[b_i](n_{i-1}, n_i) v(n_N)` with
//!
//! * `M^->_x[a](n, n') = a^{2x + n - n'} 1{n' >= x} 1{x + n - n' >= 0}`,
//! * `M^v_x[a] = (M^->_x[a])^T`,
//! * `w(n) = c1^n`, `v(n) = c2^n`.
//!
//! Summing over the gaps gives the stationary law of the increments as
//! `w^T (prod_i M^{dir_i}_{x_i}[b_i]) v / Z`. The crate builds these
//! operators truncated to `[0, K)^2`, checks the quadratic algebra they
//! satisfy, and evaluates the matrix product pmf.

pub mod algebra;
pub mod operator;
pub mod pmf;

pub use algebra::{verify_quadratic_algebra, AlgebraReport};
pub use operator::{
    boundary_vector, build_m, lower_shift, upper_shift, BoundaryVector, OperatorLabel,
    TruncatedOperator,
};
pub use pmf::{mpa_normalization, mpa_pmf, mpa_pmf_many, mpa_weight, MpaPmf};
