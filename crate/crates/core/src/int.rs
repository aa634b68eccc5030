//! Arbitrary-precision integers and their JSON encoding.
//!
//! Values with magnitude at most 2^53 are written as JSON numbers so that
//! ordinary tooling reads them exactly; anything larger is written as a
//! decimal string. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

pub type Int = BigInt;

const SAFE: u64 = 1 << 53;

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) if x.unsigned_abs() <= SAFE => s.serialize_i64(x),
        _ => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    d.deserialize_any(IntVisitor)
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigInt, E> {
        if v.fract() == 0.0 && v.abs() <= SAFE as f64 {
            Ok((v as i64).into())
        } else {
            Err(E::custom(format!("{v} is not an exact integer")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim()
            .parse()
            .map_err(|_| E::custom(format!("`{v}` is not a decimal integer")))
    }
}

/// Encodes a `BTreeMap<String, BigInt>` with the same number/string rule.
pub mod map {
    use super::*;
    use serde::ser::SerializeMap;
    use serde::Deserialize;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            out.serialize_entry(k, &Wrap(v))?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, BigInt>, D::Error> {
        let raw: BTreeMap<String, Owned> = BTreeMap::deserialize(d)?;
        Ok(raw.into_iter().map(|(k, v)| (k, v.0)).collect())
    }

    struct Wrap<'a>(&'a BigInt);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::serialize(self.0, s)
        }
    }

    struct Owned(BigInt);

    impl<'de> Deserialize<'de> for Owned {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            super::deserialize(d).map(Owned)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct W(#[serde(with = "crate::int")] BigInt);

    #[test]
    fn small_values_are_numbers() {
        assert_eq!(serde_json::to_string(&W(BigInt::from(-7))).unwrap(), "-7");
    }

    #[test]
    fn large_values_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&W(big.clone())).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), W(big));
    }

    #[test]
    fn boundary_of_safe_range() {
        let edge = BigInt::from(1u64 << 53);
        assert_eq!(serde_json::to_string(&W(edge.clone())).unwrap(), "9007199254740992");
        let over = edge + 1;
        assert!(serde_json::to_string(&W(over)).unwrap().starts_with('"'));
    }
}
