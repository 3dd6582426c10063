//! Rationals travel as `["num", "den"]` pairs of decimal strings so that
//! arbitrary precision survives any JSON parser.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

pub fn to_pair(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

pub fn from_strs(num: &str, den: &str) -> Result<Rational> {
    let num =
        BigInt::from_str(num).map_err(|e| Error::Malformed(format!("numerator {num:?}: {e}")))?;
    let den =
        BigInt::from_str(den).map_err(|e| Error::Malformed(format!("denominator {den:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Malformed("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

/// Prints `num/den` (always with the denominator, so `-84/1` for integers).
pub fn display(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    to_pair(r).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let (num, den) = <(String, String)>::deserialize(d)?;
    from_strs(&num, &den).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_pair).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let pairs = Vec::<(String, String)>::deserialize(d)?;
        pairs
            .iter()
            .map(|(n, den)| from_strs(n, den).map_err(D::Error::custom))
            .collect()
    }
}
