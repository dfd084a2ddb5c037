//! Spin-independent in-plane scattering amplitudes `f(phi)`.
//!
//! All angles are signed scattering angles in the x-y plane, restricted to
//! the principal range `(-pi, pi]`. Callers wrap before evaluating.
//!
//! Partial-wave convention: the `(2l + 1)` weight is kept outside the
//! coefficients,
//!
//! ```text
//! f(phi) = sum_l (2l + 1) a_l P_l(cos phi)
//! ```
//!
//! so `[a0 = 1, a1 = 1]` evaluates to `1 + 3 cos(phi)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmplitudeModel {
    Constant {
        #[serde(with = "crate::serde_complex")]
        c: Complex64,
    },
    PartialWave {
        #[serde(with = "crate::serde_complex::vec")]
        coeffs: Vec<Complex64>,
    },
    /// `strength / (sin²(phi/2) + epsilon)`, a regulated forward peak.
    #[serde(rename = "rutherford")]
    RutherfordLike { strength: f64, epsilon: f64 },
}

impl AmplitudeModel {
    pub fn constant(c: impl Into<Complex64>) -> Self {
        AmplitudeModel::Constant { c: c.into() }
    }

    pub fn partial_wave(coeffs: Vec<Complex64>) -> Result<Self> {
        let m = AmplitudeModel::PartialWave { coeffs };
        m.validate()?;
        Ok(m)
    }

    pub fn rutherford(strength: f64, epsilon: f64) -> Result<Self> {
        let m = AmplitudeModel::RutherfordLike { strength, epsilon };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AmplitudeModel::Constant { c } => {
                if !(c.re.is_finite() && c.im.is_finite()) {
                    return Err(Error::param("c", "must be finite"));
                }
            }
            AmplitudeModel::PartialWave { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::param("coeffs", "need at least one partial wave"));
                }
                if coeffs
                    .iter()
                    .any(|a| !(a.re.is_finite() && a.im.is_finite()))
                {
                    return Err(Error::param("coeffs", "must be finite"));
                }
            }
            AmplitudeModel::RutherfordLike { strength, epsilon } => {
                if !strength.is_finite() {
                    return Err(Error::param("strength", "must be finite"));
                }
                if !(*epsilon > 0.0 && epsilon.is_finite()) {
                    return Err(Error::param("epsilon", "regulator must be positive"));
                }
            }
        }
        Ok(())
    }

    /// Every supported model depends on `phi` only through `cos(phi)` or
    /// `sin²(phi/2)`, i.e. on `|phi|`.
    pub fn is_symmetric(&self) -> bool {
        true
    }

    pub fn evaluate(&self, phi: f64) -> Result<Complex64> {
        check_principal(phi)?;
        self.validate()?;
        Ok(match self {
            AmplitudeModel::Constant { c } => *c,
            AmplitudeModel::PartialWave { coeffs } => {
                let x = phi.cos();
                legendre_series(coeffs, x)
            }
            AmplitudeModel::RutherfordLike { strength, epsilon } => {
                let s = (phi / 2.0).sin();
                Complex64::from(strength / (s * s + epsilon))
            }
        })
    }

    /// `f(-pi + phi)`, the amplitude of the particles-exchanged process.
    pub fn evaluate_exchanged(&self, phi: f64) -> Result<Complex64> {
        check_principal(phi)?;
        self.evaluate(exchange_angle(phi))
    }
}

/// Sum of `(2l + 1) a_l P_l(x)` via Bonnet's recurrence.
fn legendre_series(coeffs: &[Complex64], x: f64) -> Complex64 {
    let mut p_prev = 1.0;
    let mut p = x;
    let mut sum = Complex64::default();
    for (l, a) in coeffs.iter().enumerate() {
        let pl = match l {
            0 => 1.0,
            1 => x,
            _ => {
                // (l) P_l = (2l - 1) x P_{l-1} - (l - 1) P_{l-2}
                let lf = l as f64;
                let next = ((2.0 * lf - 1.0) * x * p - (lf - 1.0) * p_prev) / lf;
                p_prev = p;
                p = next;
                next
            }
        };
        sum += a * ((2 * l + 1) as f64 * pl);
    }
    sum
}

pub fn check_principal(phi: f64) -> Result<()> {
    if phi > -PI && phi <= PI {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange(phi))
    }
}

/// Wraps any finite angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

/// `-pi + phi` wrapped into `(-pi, pi]`; `phi = 0` maps to `pi`.
///
/// Only for evaluating `f`. Spin phases must use the unwrapped `phi - pi`,
/// since `e^{i m theta}` is not `2 pi` periodic for half-odd `m`.
pub fn exchange_angle(phi: f64) -> f64 {
    let t = phi - PI;
    if t <= -PI {
        t + 2.0 * PI
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64) -> Complex64 {
        Complex64::from(re)
    }

    /// Explicit polynomial forms, independent of the recurrence.
    fn legendre_explicit(l: usize, x: f64) -> f64 {
        match l {
            0 => 1.0,
            1 => x,
            2 => (3.0 * x * x - 1.0) / 2.0,
            3 => (5.0 * x.powi(3) - 3.0 * x) / 2.0,
            4 => (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0,
            5 => (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0,
            _ => unreachable!(),
        }
    }

    #[test]
    fn constant_model() {
        let m = AmplitudeModel::constant(1.0);
        for phi in [-3.0, -1.0, 0.0, 0.5, PI] {
            assert_eq!(m.evaluate(phi).unwrap(), c(1.0));
        }
    }

    #[test]
    fn partial_wave_two_terms_forward() {
        let m = AmplitudeModel::partial_wave(vec![c(1.0), c(1.0)]).unwrap();
        assert!((m.evaluate(0.0).unwrap() - c(4.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_wave_matches_explicit_polynomials() {
        let coeffs: Vec<Complex64> = (0..6)
            .map(|l| Complex64::new(0.3 - 0.1 * l as f64, 0.05 * l as f64))
            .collect();
        let m = AmplitudeModel::partial_wave(coeffs.clone()).unwrap();
        for k in 0..50 {
            let phi = -PI + 2.0 * PI * (k as f64 + 0.5) / 50.0;
            let x = phi.cos();
            let want: Complex64 = coeffs
                .iter()
                .enumerate()
                .map(|(l, a)| a * ((2 * l + 1) as f64 * legendre_explicit(l, x)))
                .sum();
            assert!((m.evaluate(phi).unwrap() - want).norm() < 1e-12);
        }
    }

    #[test]
    fn real_partial_waves_give_real_amplitude() {
        let m = AmplitudeModel::partial_wave(vec![c(0.7), c(-0.2), c(0.05)]).unwrap();
        for phi in [-2.0, 0.1, 1.3, PI] {
            assert_eq!(m.evaluate(phi).unwrap().im, 0.0);
        }
    }

    #[test]
    fn symmetric_models_are_even() {
        let models = [
            AmplitudeModel::constant(Complex64::new(0.3, -1.0)),
            AmplitudeModel::partial_wave(vec![
                Complex64::new(1.0, 0.2),
                c(0.5),
                Complex64::new(0.0, 0.1),
            ])
            .unwrap(),
            AmplitudeModel::rutherford(2.0, 0.05).unwrap(),
        ];
        for m in &models {
            assert!(m.is_symmetric());
            assert!(
                (m.evaluate(FRAC_PI_2).unwrap() - m.evaluate(-FRAC_PI_2).unwrap()).norm() < 1e-12
            );
            for k in 1..40 {
                let phi = PI * k as f64 / 40.0;
                assert!((m.evaluate(phi).unwrap() - m.evaluate(-phi).unwrap()).norm() < 1e-12);
                // f(-pi + phi) = f(pi - phi) for even f
                let ex = m.evaluate(exchange_angle(phi)).unwrap();
                assert!((ex - m.evaluate(PI - phi).unwrap()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rutherford_requires_positive_regulator() {
        assert!(AmplitudeModel::rutherford(1.0, 0.0).is_err());
        assert!(AmplitudeModel::rutherford(1.0, -1.0).is_err());
        let m = AmplitudeModel::rutherford(1.0, 0.01).unwrap();
        assert!((m.evaluate(0.0).unwrap() - c(100.0)).norm() < 1e-12);
        assert!((m.evaluate(PI).unwrap() - c(1.0 / 1.01)).norm() < 1e-12);
    }

    #[test]
    fn angles_outside_principal_range_rejected() {
        let m = AmplitudeModel::constant(1.0);
        assert!(m.evaluate(-PI).is_err());
        assert!(m.evaluate(PI + 1e-9).is_err());
        assert!(m.evaluate(f64::NAN).is_err());
    }

    #[test]
    fn exchange_angle_cases() {
        assert!((exchange_angle(FRAC_PI_2) + FRAC_PI_2).abs() < 1e-15);
        assert_eq!(exchange_angle(PI), 0.0);
        assert_eq!(exchange_angle(0.0), PI);
        for k in 1..=100 {
            let phi = -PI + 2.0 * PI * k as f64 / 100.0;
            let ex = exchange_angle(phi);
            assert!(check_principal(ex).is_ok());
            assert!((wrap_angle(phi - PI) - ex).abs() < 1e-12);
        }
    }

    #[test]
    fn serde_shape() {
        let m: AmplitudeModel =
            serde_json::from_str(r#"{"kind":"rutherford","strength":1.0,"epsilon":0.1}"#).unwrap();
        assert_eq!(
            m,
            AmplitudeModel::RutherfordLike {
                strength: 1.0,
                epsilon: 0.1
            }
        );
        let m: AmplitudeModel =
            serde_json::from_str(r#"{"kind":"constant","c":{"re":1.0,"im":0.0}}"#).unwrap();
        assert_eq!(m, AmplitudeModel::constant(1.0));
        let m: AmplitudeModel =
            serde_json::from_str(r#"{"kind":"partial_wave","coeffs":[{"re":1.0,"im":0.0}]}"#)
                .unwrap();
        assert!(matches!(m, AmplitudeModel::PartialWave { .. }));
    }
}
