//! `{"re": _, "im": _}` encoding for complex numbers.
//!
//! Use with `#[serde(with = "crate::serde_complex")]` on a `Complex64`
//! field, or `crate::serde_complex::vec` on a `Vec<Complex64>`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for Complex64 {
    fn from(z: JsonComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

pub fn serialize<S: Serializer>(z: &Complex64, serializer: S) -> Result<S::Ok, S::Error> {
    JsonComplex::from(*z).serialize(serializer)
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Complex64, D::Error> {
    JsonComplex::deserialize(deserializer).map(Complex64::from)
}

pub mod vec {
    use super::JsonComplex;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(zs: &[Complex64], serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JsonComplex> = zs.iter().copied().map(JsonComplex::from).collect();
        v.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<Complex64>, D::Error> {
        Vec::<JsonComplex>::deserialize(deserializer)
            .map(|v| v.into_iter().map(Complex64::from).collect())
    }
}
