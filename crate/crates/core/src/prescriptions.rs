//! Closed-form differential cross-sections for two identical particles.
//!
//! Setup: centre-of-mass scattering in the x-y plane, spin quantization
//! axis `z` normal to that plane. The left particle carries spin state
//! `alpha`, the right one `beta`. The detectors look for the final spin
//! states of direct scattering (`alpha` on top, `beta` at the bottom)
//! unless a [`Detector`] says otherwise.
//!
//! Three prescriptions are available:
//!
//! * [`Prescription::StandardSsc`]: (anti)symmetrize, then square,
//!   `w = |f(phi) + sign f(-pi+phi) <beta|alpha><alpha|beta>|²`.
//! * [`Prescription::DynamicalGm`]: add the direct and exchanged amplitudes
//!   with no symmetrization; each particle picks up `exp(i Sz theta)` with
//!   `theta = phi` (direct) or `theta = -pi + phi` (exchanged).
//! * [`Prescription::WorkingSOmega`]: as above but the phase is the scalar
//!   `exp(i s theta)`, using the total spin rather than its projection.
//!
//! The two overlap sums of the exchanged branch are independent single
//! sums multiplied together, mirroring the standard expression.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::{check_principal, AmplitudeModel};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::spin::{along_axis, SpinState};
use crate::tolerances::ASYMMETRY_DENOM_FLOOR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Prescription {
    #[serde(rename = "standard")]
    StandardSsc,
    #[serde(rename = "dynamical")]
    DynamicalGm,
    #[serde(rename = "working")]
    WorkingSOmega,
}

impl Prescription {
    pub const ALL: [Prescription; 3] = [
        Prescription::StandardSsc,
        Prescription::DynamicalGm,
        Prescription::WorkingSOmega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Prescription::StandardSsc => "standard",
            Prescription::DynamicalGm => "dynamical",
            Prescription::WorkingSOmega => "working",
        }
    }
}

impl fmt::Display for Prescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Prescription {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "standard_ssc" | "ssc" => Ok(Prescription::StandardSsc),
            "dynamical" | "dynamical_gm" | "gm" => Ok(Prescription::DynamicalGm),
            "working" | "working_s_omega" => Ok(Prescription::WorkingSOmega),
            _ => Err(Error::Parse {
                what: "prescription",
                input: s.to_string(),
            }),
        }
    }
}

/// Polarization-sensitive detector states.
#[derive(Clone, Debug, PartialEq)]
pub struct Detector {
    pub top: SpinState,
    pub bottom: SpinState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterConfig {
    s: HalfInt,
    alpha: SpinState,
    beta: SpinState,
    model: AmplitudeModel,
    detector: Option<Detector>,
}

impl ScatterConfig {
    pub fn new(alpha: SpinState, beta: SpinState, model: AmplitudeModel) -> Result<Self> {
        let s = alpha.spin();
        if beta.spin() != s {
            return Err(Error::SpinMismatch {
                left: s,
                right: beta.spin(),
            });
        }
        model.validate()?;
        Ok(ScatterConfig {
            s,
            alpha,
            beta,
            model,
            detector: None,
        })
    }

    /// Measure `top` in the top detector and `bottom` in the bottom one
    /// instead of the direct-scattering final states.
    pub fn with_detector(mut self, top: SpinState, bottom: SpinState) -> Result<Self> {
        for d in [&top, &bottom] {
            if d.spin() != self.s {
                return Err(Error::SpinMismatch {
                    left: self.s,
                    right: d.spin(),
                });
            }
        }
        self.detector = Some(Detector { top, bottom });
        Ok(self)
    }

    pub fn spin(&self) -> HalfInt {
        self.s
    }

    pub fn alpha(&self) -> &SpinState {
        &self.alpha
    }

    pub fn beta(&self) -> &SpinState {
        &self.beta
    }

    pub fn model(&self) -> &AmplitudeModel {
        &self.model
    }

    pub fn detector(&self) -> Option<&Detector> {
        self.detector.as_ref()
    }

    /// `(-1)^(2s)`.
    pub fn statistics_sign(&self) -> i32 {
        self.s.statistics_sign()
    }

    fn detected(&self) -> (&SpinState, &SpinState) {
        match &self.detector {
            Some(d) => (&d.top, &d.bottom),
            None => (&self.alpha, &self.beta),
        }
    }
}

/// `exp(i m phi)`: phase picked up by projection `m` while the momentum
/// turns through `phi`.
pub fn gm_phase(m: HalfInt, phi: f64) -> Complex64 {
    Complex64::cis(m.value() * phi)
}

/// `exp(i 2s (-pi))` as an exact sign: the relative factor between the
/// exchanged and direct branches when every projection is `+s` (or `-s`).
pub fn relative_exchange_factor(s: HalfInt) -> i32 {
    // exp(i pi k) with k = -2s
    if (-s.doubled()).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(sum_i beta_i* alpha_i)(sum_j alpha_j* beta_j) = |<beta|alpha>|²`.
pub fn overlap_factor(alpha: &SpinState, beta: &SpinState) -> Result<Complex64> {
    if alpha.spin() != beta.spin() {
        return Err(Error::SpinMismatch {
            left: alpha.spin(),
            right: beta.spin(),
        });
    }
    Ok(beta.inner(alpha) * alpha.inner(beta))
}

/// `sum_m bra_m* ket_m exp(i m theta)`.
fn phased_overlap(s: HalfInt, bra: &SpinState, ket: &SpinState, theta: f64) -> Complex64 {
    s.projections()
        .zip(bra.amps().iter().zip(ket.amps()))
        .map(|(m, (b, k))| b.conj() * k * gm_phase(m, theta))
        .sum()
}

struct Branches {
    f_direct: Complex64,
    f_exchanged: Complex64,
    /// Unwrapped `-pi + phi`, for spin phases.
    theta_exchanged: f64,
}

fn branches(cfg: &ScatterConfig, phi: f64) -> Result<Branches> {
    check_principal(phi)?;
    Ok(Branches {
        f_direct: cfg.model.evaluate(phi)?,
        f_exchanged: cfg.model.evaluate_exchanged(phi)?,
        theta_exchanged: phi - PI,
    })
}

pub fn w_standard(cfg: &ScatterConfig, phi: f64) -> Result<f64> {
    let b = branches(cfg, phi)?;
    let (top, bottom) = cfg.detected();
    let direct = b.f_direct * top.inner(&cfg.alpha) * bottom.inner(&cfg.beta);
    let exchanged = b.f_exchanged * bottom.inner(&cfg.alpha) * top.inner(&cfg.beta);
    Ok((direct + exchanged * f64::from(cfg.statistics_sign())).norm_sqr())
}

pub fn w_dynamical(cfg: &ScatterConfig, phi: f64) -> Result<f64> {
    let b = branches(cfg, phi)?;
    let (top, bottom) = cfg.detected();
    let s = cfg.s;
    let direct = b.f_direct
        * phased_overlap(s, top, &cfg.alpha, phi)
        * phased_overlap(s, bottom, &cfg.beta, phi);
    let th = b.theta_exchanged;
    let exchanged = b.f_exchanged
        * phased_overlap(s, bottom, &cfg.alpha, th)
        * phased_overlap(s, top, &cfg.beta, th);
    Ok((direct + exchanged).norm_sqr())
}

pub fn w_working(cfg: &ScatterConfig, phi: f64) -> Result<f64> {
    let b = branches(cfg, phi)?;
    let (top, bottom) = cfg.detected();
    let s = cfg.s;
    let th = b.theta_exchanged;
    let direct = b.f_direct
        * gm_phase(s, phi)
        * gm_phase(s, phi)
        * top.inner(&cfg.alpha)
        * bottom.inner(&cfg.beta);
    let exchanged = b.f_exchanged
        * gm_phase(s, th)
        * gm_phase(s, th)
        * bottom.inner(&cfg.alpha)
        * top.inner(&cfg.beta);
    Ok((direct + exchanged).norm_sqr())
}

pub fn cross_section(cfg: &ScatterConfig, phi: f64, prescription: Prescription) -> Result<f64> {
    match prescription {
        Prescription::StandardSsc => w_standard(cfg, phi),
        Prescription::DynamicalGm => w_dynamical(cfg, phi),
        Prescription::WorkingSOmega => w_working(cfg, phi),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionCurve {
    pub prescription: Prescription,
    pub phis: Vec<f64>,
    pub values: Vec<f64>,
}

/// `n` uniform points `pi (2k - n) / n`, `k = 1..=n`, covering `(-pi, pi]`.
///
/// For even `n` divisible by 4 the grid contains `pi/2` exactly.
pub fn phi_grid(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::param("n_phis", "grid needs at least one point"));
    }
    Ok((1..=n)
        .map(|k| PI * ((2 * k as i64 - n as i64) as f64 / n as f64))
        .collect())
}

pub fn check_grid(phis: &[f64]) -> Result<()> {
    if phis.is_empty() {
        return Err(Error::param("phis", "grid is empty"));
    }
    for &phi in phis {
        check_principal(phi)?;
    }
    if phis.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::param("phis", "grid must be strictly increasing"));
    }
    Ok(())
}

pub fn cross_section_curve(
    cfg: &ScatterConfig,
    prescription: Prescription,
    phis: &[f64],
) -> Result<CrossSectionCurve> {
    check_grid(phis)?;
    let values = phis
        .iter()
        .map(|&phi| cross_section(cfg, phi, prescription))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossSectionCurve {
        prescription,
        phis: phis.to_vec(),
        values,
    })
}

/// Spin states polarized along `+x` (the beam direction of the left
/// particle) and `-x`.
pub fn longitudinal_states(s: HalfInt) -> Result<(SpinState, SpinState)> {
    Ok((
        along_axis(s, [1.0, 0.0, 0.0])?,
        along_axis(s, [-1.0, 0.0, 0.0])?,
    ))
}

/// Longitudinal spin correlation
/// `(w(->->) - w(-><-)) / (w(->->) + w(-><-))`.
pub fn c_ll(
    model: &AmplitudeModel,
    s: HalfInt,
    prescription: Prescription,
    phi: f64,
) -> Result<f64> {
    let (plus, minus) = longitudinal_states(s)?;
    let parallel = ScatterConfig::new(plus.clone(), plus, model.clone())?;
    let antiparallel = ScatterConfig::new(parallel.alpha.clone(), minus, model.clone())?;
    let w_par = cross_section(&parallel, phi, prescription)?;
    let w_anti = cross_section(&antiparallel, phi, prescription)?;
    let scale = model.evaluate(phi)?.norm_sqr() + model.evaluate_exchanged(phi)?.norm_sqr();
    let denom = w_par + w_anti;
    if !(scale > 0.0) || denom <= ASYMMETRY_DENOM_FLOOR * scale {
        return Err(Error::UndefinedAsymmetry { phi });
    }
    Ok((w_par - w_anti) / denom)
}
