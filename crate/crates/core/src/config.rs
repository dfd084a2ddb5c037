//! Run configurations for the command-line front end.
//!
//! Every record serializes to JSON and is echoed next to the results, so a
//! run can be repeated from its own output.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::{check_principal, AmplitudeModel};
use crate::atomic::OrbitParams;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::prescriptions::{check_grid, phi_grid, Prescription};
use crate::serde_complex::JsonComplex;
use crate::spin::{along_axis, sz_eigenstate, SpinState};
use crate::sweep::SweepParams;
use crate::tolerances::{AXIS_TOL, MAX_SPIN, NORM_TOL, ORACLE_MAX_SPIN};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    Eigen(HalfInt),
    AlongAxis([f64; 3]),
    Amplitudes(Vec<JsonComplex>),
}

/// A resolved state, with a warning when the amplitudes were rescaled.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub state: SpinState,
    pub warning: Option<String>,
}

impl StateSpec {
    pub fn resolve(&self, s: HalfInt) -> Result<Resolved> {
        match self {
            StateSpec::Eigen(m) => Ok(Resolved {
                state: sz_eigenstate(s, *m)?,
                warning: None,
            }),
            StateSpec::AlongAxis(n) => {
                let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
                if !((norm - 1.0).abs() <= AXIS_TOL) {
                    return Err(Error::NonUnitAxis { norm });
                }
                Ok(Resolved {
                    state: along_axis(s, *n)?,
                    warning: None,
                })
            }
            StateSpec::Amplitudes(list) => {
                let amps: Vec<Complex64> = list.iter().copied().map(Into::into).collect();
                let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
                let warning = (!((norm_sqr - 1.0).abs() <= NORM_TOL))
                    .then(|| format!("amplitudes had squared norm {norm_sqr}; normalized"));
                Ok(Resolved {
                    state: SpinState::normalized(s, amps)?,
                    warning,
                })
            }
        }
    }
}

fn parse_err(what: &'static str, input: &str) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
    }
}

fn parse_reals(what: &'static str, input: &str) -> Result<Vec<f64>> {
    input
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| parse_err(what, input)))
        .collect()
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let t: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || parse_err("complex number", input);
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(Complex64::from).map_err(|_| err());
    };
    // Split at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| err())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| err())?, im))
}

impl FromStr for StateSpec {
    type Err = Error;

    /// `+x`, `-z`, `eigen:1/2`, `axis:0,0.6,0.8`, `amps:1,1i`.
    fn from_str(input: &str) -> Result<Self> {
        let t = input.trim();
        let axis = |k: usize, sign: f64| {
            let mut n = [0.0; 3];
            n[k] = sign;
            StateSpec::AlongAxis(n)
        };
        match t {
            "+x" | "x" => return Ok(axis(0, 1.0)),
            "-x" => return Ok(axis(0, -1.0)),
            "+y" | "y" => return Ok(axis(1, 1.0)),
            "-y" => return Ok(axis(1, -1.0)),
            "+z" | "z" => return Ok(axis(2, 1.0)),
            "-z" => return Ok(axis(2, -1.0)),
            _ => {}
        }
        let (kind, rest) = t.split_once(':').ok_or_else(|| parse_err("state", input))?;
        match kind.trim() {
            "eigen" | "m" => Ok(StateSpec::Eigen(rest.parse()?)),
            "axis" => {
                let v = parse_reals("axis", rest)?;
                let n: [f64; 3] = v.try_into().map_err(|_| parse_err("axis", input))?;
                Ok(StateSpec::AlongAxis(n))
            }
            "amps" => {
                let amps = rest
                    .split(',')
                    .map(|a| parse_complex(a).map(JsonComplex::from))
                    .collect::<Result<Vec<_>>>()?;
                Ok(StateSpec::Amplitudes(amps))
            }
            _ => Err(parse_err("state", input)),
        }
    }
}

/// `constant:1`, `constant:0.5+0.5i`, `partial:0.6+0.2i,0.3`,
/// `rutherford:1,0.1`.
pub fn parse_model(input: &str) -> Result<AmplitudeModel> {
    let (kind, rest) = input
        .trim()
        .split_once(':')
        .ok_or_else(|| parse_err("amplitude model", input))?;
    match kind.trim() {
        "constant" | "const" => Ok(AmplitudeModel::constant(parse_complex(rest)?)),
        "partial" | "partial_wave" => {
            let coeffs = rest
                .split(',')
                .map(parse_complex)
                .collect::<Result<Vec<_>>>()?;
            AmplitudeModel::partial_wave(coeffs)
        }
        "rutherford" => match parse_reals("rutherford parameters", rest)?.as_slice() {
            &[strength, epsilon] => AmplitudeModel::rutherford(strength, epsilon),
            _ => Err(parse_err("rutherford parameters", input)),
        },
        _ => Err(parse_err("amplitude model", input)),
    }
}

pub fn parse_prescriptions(input: &str) -> Result<Vec<Prescription>> {
    let list = input
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Prescription>>>()?;
    if list.is_empty() {
        return Err(Error::param(
            "prescriptions",
            "at least one prescription is required",
        ));
    }
    Ok(list)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpec {
    /// `phi_grid(n)`.
    Uniform(usize),
    /// Explicit angles in radians.
    Points(Vec<f64>),
}

impl GridSpec {
    pub fn angles(&self) -> Result<Vec<f64>> {
        match self {
            GridSpec::Uniform(n) => phi_grid(*n),
            GridSpec::Points(p) => {
                if p.is_empty() {
                    return Err(Error::param("phis", "at least one angle is required"));
                }
                check_grid(p)?;
                Ok(p.clone())
            }
        }
    }
}

fn check_spin(s: HalfInt) -> Result<()> {
    s.check_spin()?;
    if s > MAX_SPIN {
        return Err(Error::SpinTooLarge { s, limit: MAX_SPIN });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XsecConfig {
    pub s: HalfInt,
    pub alpha: StateSpec,
    pub beta: StateSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<StateSpec>,
    pub model: AmplitudeModel,
    pub prescriptions: Vec<Prescription>,
    pub grid: GridSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CllConfig {
    pub s: HalfInt,
    pub model: AmplitudeModel,
    pub grid: GridSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub s: HalfInt,
    pub model: AmplitudeModel,
    /// Per prescription.
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricConfig {
    pub omega: f64,
    pub a_now: f64,
    pub point: [f64; 4],
    /// Step for the curl and the Jacobian cross-check.
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeConfig {
    pub s: HalfInt,
    pub seed: u64,
    pub samples_per_sector: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunConfig {
    Xsec(XsecConfig),
    Sweep(SweepParams),
    Cll(CllConfig),
    Verify(VerifyConfig),
    Metric(MetricConfig),
    Exchange(ExchangeConfig),
    Atomic(OrbitParams),
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::Xsec(_) => "xsec",
            RunConfig::Sweep(_) => "sweep",
            RunConfig::Cll(_) => "cll",
            RunConfig::Verify(_) => "verify",
            RunConfig::Metric(_) => "metric",
            RunConfig::Exchange(_) => "exchange",
            RunConfig::Atomic(_) => "atomic",
        }
    }

    /// Checks every field before anything is computed.
    pub fn validate(&self) -> Result<()> {
        match self {
            RunConfig::Xsec(c) => {
                check_spin(c.s)?;
                c.model.validate()?;
                for spec in [
                    Some(&c.alpha),
                    Some(&c.beta),
                    c.top.as_ref(),
                    c.bottom.as_ref(),
                ]
                .into_iter()
                .flatten()
                {
                    spec.resolve(c.s)?;
                }
                if c.top.is_some() != c.bottom.is_some() {
                    return Err(Error::param(
                        "detector",
                        "give both top and bottom states or neither",
                    ));
                }
                if c.prescriptions.is_empty() {
                    return Err(Error::param(
                        "prescriptions",
                        "at least one prescription is required",
                    ));
                }
                c.grid.angles().map(drop)
            }
            RunConfig::Sweep(p) => {
                check_spin(p.s)?;
                p.model.validate()?;
                if p.n_phis == 0 {
                    return Err(Error::param("n_phis", "must be at least 1"));
                }
                if !(p.tol >= 0.0 && p.tol.is_finite()) {
                    return Err(Error::param("tol", "must be finite and non-negative"));
                }
                Ok(())
            }
            RunConfig::Cll(c) => {
                check_spin(c.s)?;
                c.model.validate()?;
                c.grid.angles().map(drop)
            }
            RunConfig::Verify(c) => {
                c.s.check_spin()?;
                if c.s > ORACLE_MAX_SPIN {
                    return Err(Error::SpinTooLarge {
                        s: c.s,
                        limit: ORACLE_MAX_SPIN,
                    });
                }
                c.model.validate()?;
                if c.samples == 0 {
                    return Err(Error::param("samples", "must be at least 1"));
                }
                if !(c.tol >= 0.0 && c.tol.is_finite()) {
                    return Err(Error::param("tol", "must be finite and non-negative"));
                }
                Ok(())
            }
            RunConfig::Metric(c) => {
                if !c.omega.is_finite() {
                    return Err(Error::param("omega", "must be finite"));
                }
                if !(c.a_now > 0.0 && c.a_now.is_finite()) {
                    return Err(Error::param("a_now", "scale factor must be positive"));
                }
                if c.point.iter().any(|x| !x.is_finite()) {
                    return Err(Error::param("point", "coordinates must be finite"));
                }
                if !(c.h > 0.0 && c.h.is_finite()) {
                    return Err(Error::param("h", "step must be positive"));
                }
                Ok(())
            }
            RunConfig::Exchange(c) => check_spin(c.s),
            RunConfig::Atomic(p) => p.validate(),
        }
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Converts a user angle to radians and checks it lies in `(-pi, pi]`.
pub fn angle_in(value: f64, degrees: bool) -> Result<f64> {
    let phi = if degrees { value * PI / 180.0 } else { value };
    // 180 degrees converts to exactly pi in double precision.
    check_principal(phi)?;
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("0.5-0.25i").unwrap(),
            Complex64::new(0.5, -0.25)
        );
        assert_eq!(
            parse_complex("1e-3+2E+1i").unwrap(),
            Complex64::new(1e-3, 20.0)
        );
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn state_specs() {
        assert_eq!(
            "+x".parse::<StateSpec>().unwrap(),
            StateSpec::AlongAxis([1.0, 0.0, 0.0])
        );
        assert_eq!(
            "eigen:-1/2".parse::<StateSpec>().unwrap(),
            StateSpec::Eigen(HalfInt::from_doubled(-1))
        );
        assert!("axis:1,0".parse::<StateSpec>().is_err());
        assert!("up".parse::<StateSpec>().is_err());
        let amps: StateSpec = "amps:1,1i".parse().unwrap();
        let r = amps.resolve(HalfInt::HALF).unwrap();
        assert!(r.warning.is_some());
        assert!((r.state.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_unit_axis_rejected() {
        let spec = StateSpec::AlongAxis([1.0, 1.0, 0.0]);
        assert!(matches!(
            spec.resolve(HalfInt::HALF),
            Err(Error::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn models() {
        assert_eq!(
            parse_model("constant:1").unwrap(),
            AmplitudeModel::constant(1.0)
        );
        assert!(parse_model("rutherford:1,0").is_err());
        assert!(parse_model("partial:").is_err());
        assert!(parse_model("gaussian:1").is_err());
    }

    #[test]
    fn prescription_lists() {
        assert_eq!(parse_prescriptions("standard,dynamical").unwrap().len(), 2);
        assert!(parse_prescriptions("").is_err());
        assert!(parse_prescriptions(" , ").is_err());
    }

    #[test]
    fn run_config_round_trip() {
        let cfg = RunConfig::Xsec(XsecConfig {
            s: HalfInt::HALF,
            alpha: "+x".parse().unwrap(),
            beta: "amps:0.6,0.8i".parse().unwrap(),
            top: None,
            bottom: None,
            model: parse_model("partial:0.6+0.2i,0.3").unwrap(),
            prescriptions: Prescription::ALL.to_vec(),
            grid: GridSpec::Uniform(8),
        });
        let json = serde_json::to_string(&cfg).unwrap();
        assert!(json.contains("\"command\":\"xsec\""));
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        back.validate().unwrap();
    }

    #[test]
    fn degrees_boundary() {
        assert_eq!(angle_in(180.0, true).unwrap(), PI);
        assert!((angle_in(90.0, true).unwrap() - PI / 2.0).abs() < 1e-16);
        assert!(angle_in(-180.0, true).is_err());
        assert!(angle_in(4.0, false).is_err());
    }
}
