//! Exact half-integer arithmetic for spins and projections.
//!
//! A value `v` is stored as the integer `2v`, so `1/2` is `HalfInt(1)` and
//! `-3/2` is `HalfInt(-3)`. Nothing here ever touches a float until
//! [`HalfInt::value`] is called inside a numeric kernel.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);
    pub const THREE_HALVES: HalfInt = HalfInt(3);

    pub const fn from_doubled(twice_value: i32) -> Self {
        HalfInt(twice_value)
    }

    pub const fn integer(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Number of states `2s + 1` in a spin-`s` multiplet.
    pub fn multiplicity(self) -> Result<usize> {
        self.check_spin()?;
        Ok(self.0 as usize + 1)
    }

    pub fn check_spin(self) -> Result<()> {
        if self.0 < 0 {
            Err(Error::NegativeSpin(self))
        } else {
            Ok(())
        }
    }

    /// `(-1)^(2s)`: `+1` for bosons, `-1` for fermions.
    pub const fn statistics_sign(self) -> i32 {
        if self.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Checks that `m` is a valid projection for total spin `self`.
    pub fn check_projection(self, m: HalfInt) -> Result<()> {
        self.check_spin()?;
        if m.0.abs() > self.0 || (self.0 - m.0) % 2 != 0 {
            return Err(Error::InvalidProjection { s: self, m });
        }
        Ok(())
    }

    /// Basis index of projection `m` in the ascending order `-s, ..., +s`.
    pub fn index_of(self, m: HalfInt) -> Result<usize> {
        self.check_projection(m)?;
        Ok(((m.0 + self.0) / 2) as usize)
    }

    /// Projection at basis index `i` (ascending order).
    pub fn projection_at(self, i: usize) -> HalfInt {
        HalfInt(2 * i as i32 - self.0)
    }

    /// Projections `-s, -s+1, ..., +s`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> + Clone {
        let s = self.0.max(-1);
        (-s..=s).step_by(2).map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts `"3/2"`, `"-1/2"`, `"2"`, and decimal forms such as `"0.5"` or
/// `"-1.5"` that are exact multiples of one half.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "half-integer",
            input: input.to_string(),
        };
        let t = input.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| err())?;
            return match den.trim() {
                "2" => Ok(HalfInt(num)),
                "1" => Ok(HalfInt(2 * num)),
                _ => Err(err()),
            };
        }
        if let Ok(n) = t.parse::<i32>() {
            return Ok(HalfInt(2 * n));
        }
        let x: f64 = t.parse().map_err(|_| err())?;
        HalfInt::try_from(x).map_err(|_| err())
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
            return Err(Error::Parse {
                what: "half-integer",
                input: x.to_string(),
            });
        }
        Ok(HalfInt(twice as i32))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct HalfIntVisitor;

        impl Visitor<'_> for HalfIntVisitor {
            type Value = HalfInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a half-integer such as \"1/2\", 1, or 1.5")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<HalfInt, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<HalfInt, E> {
                i32::try_from(v)
                    .map(HalfInt::integer)
                    .map_err(|_| E::custom("half-integer out of range"))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<HalfInt, E> {
                i32::try_from(v)
                    .map(HalfInt::integer)
                    .map_err(|_| E::custom("half-integer out of range"))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<HalfInt, E> {
                HalfInt::try_from(v).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(HalfIntVisitor)
    }
}
