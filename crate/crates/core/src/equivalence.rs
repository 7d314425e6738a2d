//! Projective equivalence and projective fullness in the Dedekind model.
//!
//! Here `I ~ J` exactly when both have the same support and proportional
//! exponents, and the class of `I` consists of the powers of `I0`, the
//! ideal with the gcd of the exponents divided out.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::ideal::{gcd_normalize, same_spot, FactoredIdeal};

pub const MODEL_NOTE: &str = "Dedekind model: ideals are exponent vectors over the maximal ideals of one spot";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `I^m = J^n`, with `m` and `n` coprime.
    #[serde(with = "decimal")]
    pub m: BigUint,
    #[serde(with = "decimal")]
    pub n: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub model: &'static str,
}

pub fn is_proj_equivalent(i: &FactoredIdeal, j: &FactoredIdeal) -> Result<EquivalenceVerdict> {
    if !same_spot(i.spot(), j.spot()) {
        return Err(Error::SpotMismatch(format!(
            "{} and {} are different spots",
            i.spot().id(),
            j.spot().id()
        )));
    }
    let spot = i.spot();
    let no = |reason: String| EquivalenceVerdict {
        equivalent: false,
        witness: None,
        reason: Some(reason),
        model: MODEL_NOTE,
    };
    if let Some(k) = (0..spot.len()).find(|&k| i.exponent(k).is_zero() != j.exponent(k).is_zero()) {
        return Ok(no(format!("supports differ at {}", spot.site(k).label)));
    }
    let first = i.support()[0];
    let (a, b) = (i.exponent(first), j.exponent(first));
    let g = a.gcd(b);
    let m = b / &g;
    let n = a / &g;
    for k in i.support() {
        if i.exponent(k) * &m != j.exponent(k) * &n {
            return Ok(no(format!(
                "exponents not proportional at {}: {}/{} differs from {}/{}",
                spot.site(k).label,
                j.exponent(k),
                i.exponent(k),
                b,
                a
            )));
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: true,
        witness: Some(Witness { m, n }),
        reason: None,
        model: MODEL_NOTE,
    })
}

/// `(I0, d)` with `I = I0^d`; every integrally closed ideal projectively
/// equivalent to `I` is a power of `I0`.
pub fn class_generator(i: &FactoredIdeal) -> (FactoredIdeal, BigUint) {
    gcd_normalize(i)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Fullness {
    /// The ideal generates its class (gcd of Rees integers is 1).
    Full { criterion: String, model: &'static str },
    /// The class is generated by a proper root of the ideal.
    NotGenerator {
        #[serde(serialize_with = "exponents_only")]
        generator: FactoredIdeal,
        #[serde(with = "decimal")]
        d: BigUint,
        model: &'static str,
    },
}

fn exponents_only<S: serde::Serializer>(i: &FactoredIdeal, s: S) -> std::result::Result<S::Ok, S::Error> {
    let row: Vec<String> = i.exponents().iter().map(ToString::to_string).collect();
    serde::Serialize::serialize(&row, s)
}

pub fn proj_full_check(i: &FactoredIdeal) -> Fullness {
    let (i0, d) = gcd_normalize(i);
    if d == BigUint::from(1u8) {
        Fullness::Full {
            criterion: "gcd of the Rees integers is one (sufficient in general, exact in this model)".into(),
            model: MODEL_NOTE,
        }
    } else {
        Fullness::NotGenerator {
            generator: i0,
            d,
            model: MODEL_NOTE,
        }
    }
}
