//! Numerical thresholds shared across modules.
//!
//! Everything here is an absolute tolerance on dimensionless quantities.

use crate::halfint::HalfInt;

/// Allowed deviation of Σ|amp|² from one for a stored spin state.
pub const NORM_TOL: f64 = 1e-12;

/// Allowed deviation of |n| from one for a rotation axis.
pub const AXIS_TOL: f64 = 1e-12;

/// AGREE/DISAGREE threshold on max |w_standard - w_dynamical| in sweeps.
pub const AGREEMENT_TOL: f64 = 1e-9;

/// Closed form vs. brute-force oracle.
pub const ORACLE_TOL: f64 = 1e-10;

/// Relative floor below which w(parallel) + w(antiparallel) counts as zero
/// when forming C_LL. Scaled by |f(phi)|² + |f(-pi+phi)|².
pub const ASYMMETRY_DENOM_FLOOR: f64 = 1e-14;

/// Overlap threshold for "this ket equals that ket up to a global phase".
pub const SAME_RAY_TOL: f64 = 1e-10;

/// Soft upper limit on spin for rotation kernels (dimension 11).
pub const MAX_SPIN: HalfInt = HalfInt::from_doubled(10);

/// Upper limit for the two-particle oracle: (4 * 4)^2 = 256 dimensions.
pub const ORACLE_MAX_SPIN: HalfInt = HalfInt::THREE_HALVES;

/// Default number of points on the (-pi, pi] grid.
pub const DEFAULT_GRID_POINTS: usize = 360;
