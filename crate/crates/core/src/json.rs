//! Serde helpers writing big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub(crate) fn number(n: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub(crate) fn int<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    number(n).serialize(serializer)
}
