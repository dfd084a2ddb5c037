//! Spin-gravito-magnetic shift versus the Thomas term for an orbiting
//! electron.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

pub const AZIMUTHAL_NOTE: &str =
    "a gravito-magnetic shift would differ between azimuthal quantum numbers l; no l-dependent formula is evaluated";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitParams {
    /// Speed in units of c.
    pub v: f64,
    pub omega: f64,
    pub s: HalfInt,
    pub sz: HalfInt,
}

impl OrbitParams {
    pub fn new(v: f64, omega: f64, s: HalfInt, sz: HalfInt) -> Result<Self> {
        let p = Self { v, omega, s, sz };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.v) {
            return Err(Error::param(
                "v",
                format!("need 0 <= v < 1, got {}", self.v),
            ));
        }
        if !self.omega.is_finite() {
            return Err(Error::param("omega", "must be finite"));
        }
        self.s.check_projection(self.sz)
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.v * self.v).sqrt()
    }

    /// `gamma - 1` without cancellation at small `v`.
    pub fn gamma_minus_one(&self) -> f64 {
        let v2 = self.v * self.v;
        let root = (1.0 - v2).sqrt();
        v2 / (root * (1.0 + root))
    }
}

pub fn gm_shift(p: &OrbitParams) -> f64 {
    -p.sz.value() * p.omega
}

pub fn thomas_shift(p: &OrbitParams) -> Result<f64> {
    p.validate()?;
    // -sz (1 - gamma) omega
    Ok(p.sz.value() * p.gamma_minus_one() * p.omega)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub params: OrbitParams,
    pub gamma: f64,
    pub gm_shift: f64,
    pub thomas_shift: f64,
    /// `|thomas / gm| = |1 - gamma|`, independent of `sz` and `omega`.
    pub ratio: f64,
    pub small_v_estimate: f64,
    pub note: String,
}

pub fn ratio_report(p: &OrbitParams) -> Result<RatioReport> {
    p.validate()?;
    if p.v <= 0.0 {
        return Err(Error::param("v", "ratio needs v > 0"));
    }
    Ok(RatioReport {
        params: *p,
        gamma: p.gamma(),
        gm_shift: gm_shift(p),
        thomas_shift: thomas_shift(p)?,
        ratio: p.gamma_minus_one(),
        small_v_estimate: p.v * p.v / 2.0,
        note: AZIMUTHAL_NOTE.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(v: f64, omega: f64) -> OrbitParams {
        OrbitParams::new(v, omega, HalfInt::HALF, HalfInt::HALF).unwrap()
    }

    #[test]
    fn gm_examples() {
        assert_eq!(gm_shift(&orbit(0.3, 1.0)), -0.5);
        assert_eq!(gm_shift(&orbit(0.3, 0.0)), -0.0);
        let p = OrbitParams::new(0.3, 1.0, HalfInt::ONE, HalfInt::ZERO).unwrap();
        assert_eq!(gm_shift(&p), 0.0);
    }

    #[test]
    fn thomas_examples() {
        assert_eq!(thomas_shift(&orbit(0.0, 1.0)).unwrap(), 0.0);
        assert!((thomas_shift(&orbit(0.6, 1.0)).unwrap() - 0.125).abs() < 1e-12);
        // gamma = 1/sqrt(0.99)
        let naive = -0.5 * (1.0 - 1.0 / 0.99_f64.sqrt());
        let t = thomas_shift(&orbit(0.1, 1.0)).unwrap();
        assert!((t - naive).abs() < 1e-15);
        assert!((t - 2.518_907_629_606e-3).abs() < 1e-14);
    }

    #[test]
    fn rejects_luminal_speed() {
        assert!(OrbitParams::new(1.0, 1.0, HalfInt::HALF, HalfInt::HALF).is_err());
        assert!(OrbitParams::new(-0.1, 1.0, HalfInt::HALF, HalfInt::HALF).is_err());
        assert!(OrbitParams::new(0.5, 1.0, HalfInt::HALF, HalfInt::THREE_HALVES).is_err());
        let bad = OrbitParams {
            v: 1.0,
            omega: 1.0,
            s: HalfInt::HALF,
            sz: HalfInt::HALF,
        };
        assert!(thomas_shift(&bad).is_err());
    }

    #[test]
    fn ratios() {
        let r = ratio_report(&orbit(0.6, 1.0)).unwrap();
        assert!((r.ratio - 0.25).abs() < 1e-15);
        assert!((r.gamma - 1.25).abs() < 1e-15);
        let r = ratio_report(&orbit(0.01, 3.0)).unwrap();
        assert!((r.ratio - 5.0e-5).abs() < 1e-8);
        assert!((r.ratio - (r.thomas_shift / r.gm_shift).abs()).abs() < 1e-18);
        assert!(ratio_report(&orbit(0.0, 1.0)).is_err());
    }

    #[test]
    fn small_v_series() {
        for k in 1..=100 {
            let v = 0.001 * k as f64;
            let p = orbit(v, 1.0);
            let t = thomas_shift(&p).unwrap();
            assert!((t - 0.5 * v * v / 2.0).abs() <= 0.5 * v.powi(4));
        }
    }
}
