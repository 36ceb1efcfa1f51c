//! JSON encoding of arbitrary-precision coefficients: a plain number when it
//! fits in an `i64`, a decimal string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => v.serialize(s),
        None => value.to_string().serialize(s),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Wire {
    Int(i64),
    Text(String),
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    match Wire::deserialize(d)? {
        Wire::Int(v) => Ok(BigInt::from(v)),
        Wire::Text(t) => t.parse().map_err(serde::de::Error::custom),
    }
}
