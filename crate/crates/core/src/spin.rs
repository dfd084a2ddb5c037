//! Spin-`s` multiplets: states, angular-momentum matrices and rotations.
//!
//! Basis order is ascending in the projection: index `i` holds
//! `m = -s + i`. Every module in the crate relies on this order.
//!
//! Rotations are `exp(-i angle (n . S))`, evaluated as a dense matrix
//! exponential. Accuracy is checked to 1e-12 up to `s = 5`
//! ([`MAX_SPIN`](crate::tolerances::MAX_SPIN)); larger spins work but are
//! not covered by the test suite.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::tolerances::{AXIS_TOL, NORM_TOL};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Normalized pure state of a single spin.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    s: HalfInt,
    amps: CVector,
}

impl SpinState {
    /// Wraps `amps` (ascending `m`) after checking length and normalization.
    pub fn new(s: HalfInt, amps: Vec<Complex64>) -> Result<Self> {
        let dim = s.multiplicity()?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let amps = CVector::from_vec(amps);
        let norm_sqr = amps.norm_squared();
        if !((norm_sqr - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(SpinState { s, amps })
    }

    /// Rescales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(s: HalfInt, amps: Vec<Complex64>) -> Result<Self> {
        let dim = s.multiplicity()?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let mut amps = CVector::from_vec(amps);
        let norm = amps.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        amps.unscale_mut(norm);
        Ok(SpinState { s, amps })
    }

    pub(crate) fn from_vector_unchecked(s: HalfInt, amps: CVector) -> Self {
        SpinState { s, amps }
    }

    pub fn spin(&self) -> HalfInt {
        self.s
    }

    pub fn amps(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn vector(&self) -> &CVector {
        &self.amps
    }

    pub fn amp(&self, m: HalfInt) -> Result<Complex64> {
        Ok(self.amps[self.s.index_of(m)?])
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SpinState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// True when the two kets differ at most by a global phase.
    pub fn same_ray(&self, other: &SpinState, tol: f64) -> bool {
        self.s == other.s && self.inner(other).norm() >= 1.0 - tol
    }
}

/// `(Sx, Sy, Sz)` for one multiplet, in units of hbar.
#[derive(Clone, Debug)]
pub struct SpinOperatorTriple {
    pub s: HalfInt,
    pub sx: CMatrix,
    pub sy: CMatrix,
    pub sz: CMatrix,
}

impl SpinOperatorTriple {
    /// `n . S` for an arbitrary (not necessarily unit) vector `n`.
    pub fn along(&self, n: [f64; 3]) -> CMatrix {
        &self.sx * Complex64::from(n[0])
            + &self.sy * Complex64::from(n[1])
            + &self.sz * Complex64::from(n[2])
    }
}

/// Ladder-operator construction of the spin matrices.
pub fn make_spin_operators(s: HalfInt) -> Result<SpinOperatorTriple> {
    let dim = s.multiplicity()?;
    let sv = s.value();
    let mut raise = CMatrix::zeros(dim, dim);
    let mut sz = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        let m = s.projection_at(i).value();
        sz[(i, i)] = Complex64::from(m);
        if i + 1 < dim {
            // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
            raise[(i + 1, i)] = Complex64::from((sv * (sv + 1.0) - m * (m + 1.0)).sqrt());
        }
    }
    let lower = raise.adjoint();
    let sx = (&raise + &lower) * Complex64::from(0.5);
    let sy = (&raise - &lower) * (-0.5 * I);
    Ok(SpinOperatorTriple { s, sx, sy, sz })
}

pub(crate) fn check_axis(axis: [f64; 3]) -> Result<()> {
    let norm = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() <= AXIS_TOL {
        Ok(())
    } else {
        Err(Error::NonUnitAxis { norm })
    }
}

/// `exp(-i angle (n . S))` on the spin-`s` multiplet.
pub fn rotation_matrix(s: HalfInt, axis: [f64; 3], angle: f64) -> Result<CMatrix> {
    check_axis(axis)?;
    if !angle.is_finite() {
        return Err(Error::param("angle", "must be finite"));
    }
    let ops = make_spin_operators(s)?;
    Ok((ops.along(axis) * Complex64::new(0.0, -angle)).exp())
}

pub fn rotate(state: &SpinState, axis: [f64; 3], angle: f64) -> Result<SpinState> {
    let r = rotation_matrix(state.s, axis, angle)?;
    Ok(SpinState::from_vector_unchecked(state.s, r * &state.amps))
}

pub fn sz_eigenstate(s: HalfInt, m: HalfInt) -> Result<SpinState> {
    let idx = s.index_of(m)?;
    let mut amps = CVector::zeros(s.multiplicity()?);
    amps[idx] = Complex64::from(1.0);
    Ok(SpinState::from_vector_unchecked(s, amps))
}

/// Haar-uniform pure state: normalized vector of i.i.d. complex Gaussians.
pub fn random_state(s: HalfInt, seed: u64) -> Result<SpinState> {
    let dim = s.multiplicity()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    SpinState::normalized(s, amps)
}

/// Spin coherent state `|s, +s>` rotated to point along `axis`:
/// `exp(-i phi Sz) exp(-i theta Sy) |s, s>` with `(theta, phi)` the polar
/// angles of the axis.
///
/// For `s = 1/2` this gives `(1, 1)/sqrt(2)` along `+x` and `(-1, 1)/sqrt(2)`
/// along `-x` up to a global phase.
pub fn along_axis(s: HalfInt, axis: [f64; 3]) -> Result<SpinState> {
    check_axis(axis)?;
    let top = sz_eigenstate(s, s)?;
    let theta = axis[2].clamp(-1.0, 1.0).acos();
    let phi = axis[1].atan2(axis[0]);
    let tilted = rotate(&top, [0.0, 1.0, 0.0], theta)?;
    rotate(&tilted, [0.0, 0.0, 1.0], phi)
}
