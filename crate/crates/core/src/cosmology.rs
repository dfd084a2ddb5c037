//! Gravito-magnetic field seen from a frame rotating inside a spatially
//! flat Robertson-Walker universe.
//!
//! Coordinates are `(t, x, y, z)` with `c = 1`. The comoving metric is
//! `diag(-1, a², a², a²)`; substituting `x' = x cos wt - y sin wt`,
//! `y' = x sin wt + y cos wt` gives off-diagonal `g_tx = -y w a²` and
//! `g_ty = x w a²`, read as the vector potential
//!
//! ```text
//! A_i = -g_{t i} / (2 a²)      =>  A = (y w / 2, -x w / 2, 0)   at a = 1
//! ```
//!
//! whose curl is the uniform field `B = (0, 0, -w)`.
//!
//! Only `a(t_now) = 1` is accepted when extracting `A`; for curved
//! (`k != 0`) universes there is no freedom to normalize the scale factor.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MetricAtPoint {
    pub g: Matrix4<f64>,
    pub coords: [f64; 4],
}

impl MetricAtPoint {
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.g - self.g.transpose()).amax() <= tol
    }

    /// `(negative, positive)` eigenvalue counts; zero eigenvalues count as
    /// neither.
    pub fn signature(&self) -> (usize, usize) {
        let eig = SymmetricEigen::new(self.g);
        let neg = eig.eigenvalues.iter().filter(|&&v| v < 0.0).count();
        let pos = eig.eigenvalues.iter().filter(|&&v| v > 0.0).count();
        (neg, pos)
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.g[(i, j)];
            }
        }
        out
    }
}

fn check_scale(a_now: f64) -> Result<()> {
    if a_now > 0.0 && a_now.is_finite() {
        Ok(())
    } else {
        Err(Error::param("a_now", "scale factor must be positive"))
    }
}

/// Closed-form metric of the rotating frame at `point = (t, x, y, z)`, with
/// the scale factor frozen at `a_now`.
pub fn rotating_rw_metric(omega: f64, a_now: f64, point: [f64; 4]) -> Result<MetricAtPoint> {
    check_scale(a_now)?;
    let [_, x, y, _] = point;
    let a2 = a_now * a_now;
    let g_tt = -1.0 + (x * x + y * y) * omega * omega * a2;
    let g_tx = -y * omega * a2;
    let g_ty = x * omega * a2;
    #[rustfmt::skip]
    let g = Matrix4::new(
        g_tt, g_tx, g_ty, 0.0,
        g_tx, a2,   0.0,  0.0,
        g_ty, 0.0,  a2,   0.0,
        0.0,  0.0,  0.0,  a2,
    );
    Ok(MetricAtPoint { g, coords: point })
}

/// Same metric by pulling back `diag(-1, a², a², a²)` through the rotation,
/// with the Jacobian taken by central differences of step `h`.
pub fn pulled_back_metric(
    omega: f64,
    a_now: f64,
    point: [f64; 4],
    h: f64,
) -> Result<MetricAtPoint> {
    check_scale(a_now)?;
    if !(h > 0.0) {
        return Err(Error::param("h", "step must be positive"));
    }
    let comoving = |p: [f64; 4]| -> [f64; 4] {
        let [t, x, y, z] = p;
        let (s, c) = (omega * t).sin_cos();
        [t, x * c - y * s, x * s + y * c, z]
    };
    let mut jac = Matrix4::<f64>::zeros();
    for nu in 0..4 {
        let (mut fwd, mut back) = (point, point);
        fwd[nu] += h;
        back[nu] -= h;
        let (pf, pb) = (comoving(fwd), comoving(back));
        for mu in 0..4 {
            jac[(mu, nu)] = (pf[mu] - pb[mu]) / (2.0 * h);
        }
    }
    let a2 = a_now * a_now;
    let eta = Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, a2, a2, a2));
    Ok(MetricAtPoint {
        g: jac.transpose() * eta * jac,
        coords: point,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GravitoVectorPotential(pub [f64; 3]);

/// `A_i = -g_{t i} / (2 a²)`, valid only for `a_now = 1`.
pub fn potential_from_metric(metric: &MetricAtPoint, a_now: f64) -> Result<GravitoVectorPotential> {
    if a_now != 1.0 {
        return Err(Error::UnsupportedScaleFactor(a_now));
    }
    let a2 = a_now * a_now;
    Ok(GravitoVectorPotential([
        -metric.g[(0, 1)] / (2.0 * a2),
        -metric.g[(0, 2)] / (2.0 * a2),
        -metric.g[(0, 3)] / (2.0 * a2),
    ]))
}

/// Evaluates `metric_fn` at `(0, x, y, z)` and reads off the potential.
pub fn extract_potential<F>(
    metric_fn: F,
    point: [f64; 3],
    a_now: f64,
) -> Result<GravitoVectorPotential>
where
    F: Fn([f64; 4]) -> Result<MetricAtPoint>,
{
    if a_now != 1.0 {
        return Err(Error::UnsupportedScaleFactor(a_now));
    }
    let metric = metric_fn([0.0, point[0], point[1], point[2]])?;
    potential_from_metric(&metric, a_now)
}

/// Potential of the rotating frame at a spatial point.
pub fn gravito_potential(
    omega: f64,
    a_now: f64,
    point: [f64; 3],
) -> Result<GravitoVectorPotential> {
    extract_potential(|p| rotating_rw_metric(omega, a_now, p), point, a_now)
}

/// Central-difference curl of `field` at `point`.
pub fn numerical_curl<F>(field: F, point: [f64; 3], h: f64) -> Result<[f64; 3]>
where
    F: Fn([f64; 3]) -> [f64; 3],
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param("h", "step must be positive"));
    }
    // d[i][j] = dA_j / dx_i
    let mut d = [[0.0; 3]; 3];
    for (i, row) in d.iter_mut().enumerate() {
        let (mut fwd, mut back) = (point, point);
        fwd[i] += h;
        back[i] -= h;
        let (af, ab) = (field(fwd), field(back));
        for j in 0..3 {
            row[j] = (af[j] - ab[j]) / (2.0 * h);
        }
    }
    Ok([d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]])
}

/// Uniform field of the rotating frame.
pub fn gravito_magnetic_field(omega: f64) -> [f64; 3] {
    [0.0, 0.0, -omega]
}

/// `H = -mu_g . B` with `mu_g = -s` and `B = (0, 0, -w)`, i.e. `-s_z w`.
pub fn interaction_energy(spin_z_expectation: f64, omega: f64) -> f64 {
    -spin_z_expectation * omega
}

/// `exp(-i ∫ H dt)` over `[0, duration]` for a time-dependent angular
/// velocity, by composite Simpson with `steps` (even) intervals.
pub fn accumulated_phase<F>(spin_z: f64, omega: F, duration: f64, steps: usize) -> Result<Complex64>
where
    F: Fn(f64) -> f64,
{
    if steps < 2 || !steps.is_multiple_of(2) {
        return Err(Error::param(
            "steps",
            "Simpson's rule needs an even number of intervals",
        ));
    }
    if !(duration >= 0.0 && duration.is_finite()) {
        return Err(Error::param("duration", "must be finite and non-negative"));
    }
    let h = duration / steps as f64;
    let energy = |t: f64| interaction_energy(spin_z, omega(t));
    let mut sum = energy(0.0) + energy(duration);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * energy(k as f64 * h);
    }
    let integral = sum * h / 3.0;
    Ok(Complex64::cis(-integral))
}
