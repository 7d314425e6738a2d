//! Serde adapters writing arbitrary-precision integers as decimal strings.
//!
//! Deserialization also accepts plain JSON integers for hand-written input.

use std::fmt;

use num_bigint::BigUint;
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserializer, Serializer};

struct DecimalVisitor;

impl<'de> Visitor<'de> for DecimalVisitor {
    type Value = BigUint;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a nonnegative integer as a decimal string")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
        let t = v.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(E::custom(format!("not a decimal integer: {v:?}")));
        }
        t.parse::<BigUint>().map_err(E::custom)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
        Ok(BigUint::from(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigUint, E> {
        u64::try_from(v)
            .map(BigUint::from)
            .map_err(|_| E::custom(format!("negative integer {v}")))
    }
}

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    d.deserialize_any(DecimalVisitor)
}

pub(crate) fn is_one(v: &BigUint) -> bool {
    *v == BigUint::from(1u8)
}

pub(crate) fn one() -> BigUint {
    BigUint::from(1u8)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    struct SeqVisitor;

    impl<'de> Visitor<'de> for SeqVisitor {
        type Value = Vec<BigUint>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a list of decimal strings")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<BigUint>, A::Error> {
            let mut out = Vec::new();
            while let Some(Wrapped(x)) = seq.next_element()? {
                out.push(x);
            }
            Ok(out)
        }
    }

    struct Wrapped(BigUint);

    impl<'de> serde::Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            d.deserialize_any(DecimalVisitor).map(Wrapped)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        d.deserialize_seq(SeqVisitor)
    }
}
