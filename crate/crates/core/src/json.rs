//! Serde helpers for exact values.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Rationals
//! use the `{"num": .., "den": ..}` object form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub(crate) fn int_to_value(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

pub(crate) fn value_to_int(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("expected integer, got {n}"))
            }
        }
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer string {s:?}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        int_to_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_int(&v).map_err(de::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = xs.iter().map(int_to_value).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter().map(|v| value_to_int(v).map_err(de::Error::custom)).collect()
    }
}

/// Wire form of an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    #[serde(with = "bigint")]
    pub num: BigInt,
    #[serde(with = "bigint")]
    pub den: BigInt,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson { num: q.numer().clone(), den: q.denom().clone() }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        if self.den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(self.num.clone(), self.den.clone()))
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse_rational_value(&v).map_err(de::Error::custom)
    }
}

/// Accepts `{"num":..,"den":..}`, a JSON integer, or a string `"p/q"` / `"p"`.
pub fn parse_rational_value(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::Object(_) => {
            let r: RationalJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
            r.to_rational()
        }
        serde_json::Value::Number(_) => Ok(BigRational::from_integer(value_to_int(v)?)),
        serde_json::Value::String(s) => parse_rational_str(s),
        other => Err(format!("expected rational, got {other}")),
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
            Ok(BigRational::new(n, BigInt::one()))
        }
    }
}

/// `p/q` text form, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
