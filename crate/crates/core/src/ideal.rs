//! Spots (semilocal Dedekind domains given by their maximal-ideal sites),
//! factored ideals over them, and Rees-integer profiles.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::decimal;
use crate::error::{Error, Result};

/// Current version tag of the ideal JSON document.
pub const DOCUMENT_VERSION: u32 = 1;

/// Residue field descriptor of a site.
///
/// `degree` is the absolute degree over the prime field of the base site's
/// residue field (1 for `F_p`, `deg g` for `F_p[x]/(g)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawResidue")]
pub struct ResidueField {
    label: String,
    #[serde(with = "decimal")]
    degree: BigUint,
    admits_all_degrees: bool,
}

#[derive(Deserialize)]
struct RawResidue {
    label: String,
    #[serde(with = "decimal")]
    degree: BigUint,
    #[serde(default)]
    admits_all_degrees: bool,
}

impl TryFrom<RawResidue> for ResidueField {
    type Error = Error;
    fn try_from(r: RawResidue) -> Result<Self> {
        ResidueField::new(r.label, r.degree, r.admits_all_degrees)
    }
}

impl ResidueField {
    pub fn new(label: impl Into<String>, degree: impl Into<BigUint>, admits_all_degrees: bool) -> Result<Self> {
        let label = label.into();
        let degree = degree.into();
        if label.is_empty() {
            return Err(Error::InvalidSpot("residue field label is empty".into()));
        }
        if degree.is_zero() {
            return Err(Error::InvalidSpot(format!("residue field {label} has degree 0")));
        }
        Ok(ResidueField {
            label,
            degree,
            admits_all_degrees,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> &BigUint {
        &self.degree
    }

    pub fn admits_all_degrees(&self) -> bool {
        self.admits_all_degrees
    }

    /// A degree-`f` extension of this field; `f = 1` returns the field itself.
    pub fn extension(&self, f: &BigUint) -> ResidueField {
        if f.is_one() {
            return self.clone();
        }
        ResidueField {
            label: format!("{}[deg {}]", self.label, f),
            degree: &self.degree * f,
            admits_all_degrees: self.admits_all_degrees,
        }
    }
}

/// One maximal-ideal site. `multiplicity` counts identical conjugate sites
/// that this record stands for; base spots normally use 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    pub label: String,
    pub residue: ResidueField,
    #[serde(
        with = "decimal",
        default = "decimal::one",
        skip_serializing_if = "decimal::is_one"
    )]
    pub multiplicity: BigUint,
}

impl Site {
    pub fn new(label: impl Into<String>, residue: ResidueField) -> Self {
        Site {
            label: label.into(),
            residue,
            multiplicity: BigUint::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpotFlags {
    /// Some DVR of the quotient field besides the sites exists.
    #[serde(default)]
    pub has_extra_valuation: bool,
    #[serde(default)]
    pub has_approximation_property: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Base,
    ExtensionOf {
        parent: String,
        #[serde(with = "decimal")]
        degree: BigUint,
    },
}

/// A semilocal Dedekind domain, abstracted to its ordered maximal-ideal sites.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpot")]
pub struct Spot {
    id: String,
    sites: Vec<Site>,
    flags: SpotFlags,
    provenance: Provenance,
}

#[derive(Deserialize)]
struct RawSpot {
    #[serde(default = "default_spot_id")]
    id: String,
    sites: Vec<Site>,
    #[serde(default)]
    flags: SpotFlags,
    #[serde(default = "base_provenance")]
    provenance: Provenance,
}

fn default_spot_id() -> String {
    "D".into()
}

fn base_provenance() -> Provenance {
    Provenance::Base
}

impl TryFrom<RawSpot> for Spot {
    type Error = Error;
    fn try_from(r: RawSpot) -> Result<Self> {
        Spot::with_provenance(r.id, r.sites, r.flags, r.provenance)
    }
}

impl Spot {
    pub fn base(id: impl Into<String>, sites: Vec<Site>, flags: SpotFlags) -> Result<Self> {
        Spot::with_provenance(id, sites, flags, Provenance::Base)
    }

    pub fn with_provenance(
        id: impl Into<String>,
        sites: Vec<Site>,
        flags: SpotFlags,
        provenance: Provenance,
    ) -> Result<Self> {
        let id = id.into();
        if sites.is_empty() {
            return Err(Error::InvalidSpot(format!("spot {id} has no sites")));
        }
        let mut seen = BTreeSet::new();
        for s in &sites {
            if s.label.is_empty() {
                return Err(Error::InvalidSpot("empty site label".into()));
            }
            if !seen.insert(s.label.as_str()) {
                return Err(Error::InvalidSpot(format!("duplicate site label {}", s.label)));
            }
            if s.multiplicity.is_zero() {
                return Err(Error::InvalidSpot(format!("site {} has multiplicity 0", s.label)));
            }
        }
        Ok(Spot {
            id,
            sites,
            flags,
            provenance,
        })
    }

    /// Convenience constructor: `n` sites `M1..Mn` with residue `K` of degree 1.
    pub fn simple(n: usize) -> Arc<Spot> {
        let k = ResidueField::new("K", 1u32, true).unwrap();
        let sites = (1..=n).map(|i| Site::new(format!("M{i}"), k.clone())).collect();
        Arc::new(Spot::base("D", sites, SpotFlags::default()).unwrap())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, i: usize) -> &Site {
        &self.sites[i]
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn flags(&self) -> SpotFlags {
        self.flags
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.sites.iter().position(|s| s.label == label)
    }

    /// Number of maximal ideals, counting multiplicities.
    pub fn site_count(&self) -> BigUint {
        self.sites.iter().map(|s| &s.multiplicity).sum()
    }
}

pub(crate) fn same_spot(a: &Arc<Spot>, b: &Arc<Spot>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A nonzero proper ideal, stored as one exponent per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredIdeal {
    spot: Arc<Spot>,
    exponents: Vec<BigUint>,
}

impl FactoredIdeal {
    pub fn new(spot: Arc<Spot>, exponents: Vec<BigUint>) -> Result<Self> {
        if exponents.len() != spot.len() {
            return Err(Error::InvalidIdeal(format!(
                "{} exponents for {} sites",
                exponents.len(),
                spot.len()
            )));
        }
        if exponents.iter().all(Zero::is_zero) {
            return Err(Error::UnitOrZero(
                "all exponents are zero (the unit ideal)".into(),
            ));
        }
        Ok(FactoredIdeal { spot, exponents })
    }

    pub fn from_u64s(spot: Arc<Spot>, exponents: &[u64]) -> Result<Self> {
        FactoredIdeal::new(spot, exponents.iter().map(|&e| BigUint::from(e)).collect())
    }

    /// Ideal on a fresh `M1..Mn` spot.
    pub fn on_simple_spot(exponents: &[u64]) -> Result<Self> {
        FactoredIdeal::from_u64s(Spot::simple(exponents.len()), exponents)
    }

    pub fn spot(&self) -> &Arc<Spot> {
        &self.spot
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> &BigUint {
        &self.exponents[i]
    }

    /// Site indices with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&i| !self.exponents[i].is_zero())
            .collect()
    }

    pub fn positive_exponents(&self) -> impl Iterator<Item = &BigUint> {
        self.exponents.iter().filter(|e| !e.is_zero())
    }

    pub fn is_radical(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero() || e.is_one())
    }

    /// Exponentwise `k`-th power.
    pub fn pow(&self, k: &BigUint) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InvalidIdeal("zeroth power is the unit ideal".into()));
        }
        Ok(FactoredIdeal {
            spot: self.spot.clone(),
            exponents: self.exponents.iter().map(|e| e * k).collect(),
        })
    }

    pub fn rees_profile(&self) -> ReesProfile {
        rees_profile(self)
    }

    /// Exponents paired with site multiplicities, in site order.
    pub fn weighted_exponents(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.exponents
            .iter()
            .zip(self.spot.sites().iter().map(|s| &s.multiplicity))
    }

    /// Every positive exponent listed once per maximal ideal it occurs at.
    /// Only for spots whose multiplicities are small enough to enumerate.
    pub fn expanded_rees_integers(&self) -> Vec<BigUint> {
        let mut out = Vec::new();
        for (e, mult) in self.weighted_exponents() {
            if e.is_zero() {
                continue;
            }
            let mut k = BigUint::zero();
            while &k < mult {
                out.push(e.clone());
                k += 1u32;
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct IdealDocument {
    version: u32,
    spot: Spot,
    #[serde(with = "decimal::vec")]
    exponents: Vec<BigUint>,
}

impl Serialize for FactoredIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            version: u32,
            spot: &'a Spot,
            #[serde(with = "decimal::vec")]
            exponents: &'a [BigUint],
        }
        Doc {
            version: DOCUMENT_VERSION,
            spot: &self.spot,
            exponents: &self.exponents,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = IdealDocument::deserialize(d)?;
        if doc.version != DOCUMENT_VERSION {
            return Err(serde::de::Error::custom(format!(
                "unsupported ideal document version {}",
                doc.version
            )));
        }
        FactoredIdeal::new(Arc::new(doc.spot), doc.exponents).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesEntry {
    pub site: String,
    #[serde(with = "decimal")]
    pub rees_integer: BigUint,
    #[serde(with = "decimal", skip_serializing_if = "decimal::is_one")]
    pub multiplicity: BigUint,
}

/// Rees integers of an ideal: the positive exponents, with their gcd and lcm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesProfile {
    pub entries: Vec<ReesEntry>,
    #[serde(with = "decimal")]
    pub gcd: BigUint,
    #[serde(with = "decimal")]
    pub lcm: BigUint,
}

impl ReesProfile {
    /// Product of all Rees integers, each taken once per maximal ideal.
    pub fn product(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| arith::pow_big(&e.rees_integer, &e.multiplicity))
            .product()
    }

    /// Distinct Rees integers with their multiplicities (number of maximal
    /// ideals carrying that integer), ascending by value.
    pub fn multiplicities(&self) -> Vec<(BigUint, BigUint)> {
        let mut out: Vec<(BigUint, BigUint)> = Vec::new();
        let mut sorted: Vec<&ReesEntry> = self.entries.iter().collect();
        sorted.sort_by(|a, b| a.rees_integer.cmp(&b.rees_integer));
        for e in sorted {
            match out.last_mut() {
                Some((v, m)) if *v == e.rees_integer => *m += &e.multiplicity,
                _ => out.push((e.rees_integer.clone(), e.multiplicity.clone())),
            }
        }
        out
    }
}

pub fn rees_profile(ideal: &FactoredIdeal) -> ReesProfile {
    let entries: Vec<ReesEntry> = ideal
        .support()
        .into_iter()
        .map(|i| ReesEntry {
            site: ideal.spot.site(i).label.clone(),
            rees_integer: ideal.exponents[i].clone(),
            multiplicity: ideal.spot.site(i).multiplicity.clone(),
        })
        .collect();
    ReesProfile {
        gcd: arith::gcd_all(entries.iter().map(|e| &e.rees_integer)),
        lcm: arith::lcm_all(entries.iter().map(|e| &e.rees_integer)),
        entries,
    }
}

/// Divides out the gcd of the positive exponents: `I = I0^d` with `I0`
/// projectively full.
pub fn gcd_normalize(ideal: &FactoredIdeal) -> (FactoredIdeal, BigUint) {
    let d = arith::gcd_all(ideal.positive_exponents());
    let exponents = ideal.exponents.iter().map(|e| e / &d).collect();
    (
        FactoredIdeal {
            spot: ideal.spot.clone(),
            exponents,
        },
        d,
    )
}

pub fn radical(ideal: &FactoredIdeal) -> FactoredIdeal {
    FactoredIdeal {
        spot: ideal.spot.clone(),
        exponents: ideal
            .exponents
            .iter()
            .map(|e| if e.is_zero() { BigUint::zero() } else { BigUint::one() })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(e: &[u64]) -> FactoredIdeal {
        FactoredIdeal::on_simple_spot(e).unwrap()
    }

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn profile_examples() {
        let p = ideal(&[3, 0, 2]).rees_profile();
        let labels: Vec<_> = p.entries.iter().map(|e| e.site.as_str()).collect();
        assert_eq!(labels, ["M1", "M3"]);
        assert_eq!(p.gcd, BigUint::from(1u8));
        assert_eq!(p.lcm, BigUint::from(6u8));
        assert_eq!(p.product(), BigUint::from(6u8));

        let p = ideal(&[1, 1]).rees_profile();
        assert_eq!((p.gcd.clone(), p.lcm.clone(), p.product()), (1u8.into(), 1u8.into(), 1u8.into()));

        let p = ideal(&[4, 6]).rees_profile();
        assert_eq!((p.gcd.clone(), p.lcm.clone(), p.product()), (2u8.into(), 12u8.into(), 24u8.into()));
    }

    #[test]
    fn gcd_normalize_examples() {
        for (input, out, d) in [
            (&[4u64, 6][..], &[2u64, 3][..], 2u64),
            (&[5, 5, 5], &[1, 1, 1], 5),
            (&[2, 3], &[2, 3], 1),
        ] {
            let (i0, got_d) = gcd_normalize(&ideal(input));
            assert_eq!(i0.exponents(), big(out).as_slice());
            assert_eq!(got_d, BigUint::from(d));
        }
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&ideal(&[3, 2])).exponents(), big(&[1, 1]).as_slice());
        assert_eq!(radical(&ideal(&[0, 2])).exponents(), big(&[0, 1]).as_slice());
        assert_eq!(radical(&ideal(&[1, 1, 1])).exponents(), big(&[1, 1, 1]).as_slice());
    }

    #[test]
    fn rejects_unit_ideal_and_wrong_length() {
        assert!(matches!(ideal_err(&[0, 0]), Error::UnitOrZero(_)));
        let spot = Spot::simple(2);
        assert!(matches!(
            FactoredIdeal::from_u64s(spot, &[1]).unwrap_err(),
            Error::InvalidIdeal(_)
        ));
    }

    fn ideal_err(e: &[u64]) -> Error {
        FactoredIdeal::on_simple_spot(e).unwrap_err()
    }

    #[test]
    fn spot_rejects_duplicate_labels() {
        let k = ResidueField::new("K", 1u32, false).unwrap();
        let err = Spot::base("D", vec![Site::new("M", k.clone()), Site::new("M", k)], SpotFlags::default());
        assert!(matches!(err, Err(Error::InvalidSpot(_))));
        assert!(Spot::base("D", vec![], SpotFlags::default()).is_err());
        assert!(ResidueField::new("", 1u32, false).is_err());
        assert!(ResidueField::new("K", 0u32, false).is_err());
    }

    #[test]
    fn json_document_shape() {
        let i = ideal(&[3, 0, 2]);
        let v = serde_json::to_value(&i).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["exponents"], serde_json::json!(["3", "0", "2"]));
        assert_eq!(v["spot"]["sites"][0]["residue"]["degree"], "1");
        assert!(v["spot"]["sites"][0].get("multiplicity").is_none());
        assert_eq!(v["spot"]["flags"]["has_extra_valuation"], false);
    }

    #[test]
    fn json_accepts_minimal_hand_written_input() {
        let text = r#"{"version":1,"spot":{"sites":[
            {"label":"p","residue":{"label":"F_2","degree":"1"}},
            {"label":"q","residue":{"label":"F_3","degree":1}}]},
            "exponents":["123456789012345678901234567890", 0]}"#;
        let i: FactoredIdeal = serde_json::from_str(text).unwrap();
        assert_eq!(i.spot().id(), "D");
        assert_eq!(i.exponent(0).to_string(), "123456789012345678901234567890");
        let bad = r#"{"version":1,"spot":{"sites":[{"label":"p","residue":{"label":"F_2","degree":"1"}}]},"exponents":["0"]}"#;
        assert!(serde_json::from_str::<FactoredIdeal>(bad).is_err());
        let neg = r#"{"version":1,"spot":{"sites":[{"label":"p","residue":{"label":"F_2","degree":"1"}}]},"exponents":["-3"]}"#;
        assert!(serde_json::from_str::<FactoredIdeal>(neg).is_err());
    }

    fn arb_exponents() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..60, 1..7).prop_filter("nonzero", |v| v.iter().any(|&e| e > 0))
    }

    proptest! {
        #[test]
        fn gcd_normalize_reconstructs(e in arb_exponents()) {
            let i = ideal(&e);
            let (i0, d) = gcd_normalize(&i);
            prop_assert_eq!(i0.pow(&d).unwrap(), i.clone());
            prop_assert!(i0.rees_profile().gcd.is_one());
        }

        #[test]
        fn radical_laws(e in arb_exponents()) {
            let i = ideal(&e);
            let r = radical(&i);
            prop_assert_eq!(radical(&r), r.clone());
            prop_assert_eq!(radical(&gcd_normalize(&i).0), r.clone());
            prop_assert_eq!(r.support(), i.support());
            prop_assert!(r.rees_profile().entries.iter().all(|e| e.rees_integer.is_one()));
        }

        #[test]
        fn json_round_trip_is_exact(e in prop::collection::vec(0u128..u128::MAX, 1..5)) {
            prop_assume!(e.iter().any(|&x| x > 0));
            let spot = Spot::simple(e.len());
            let i = FactoredIdeal::new(spot, e.iter().map(|&x| BigUint::from(x)).collect()).unwrap();
            let text = serde_json::to_string(&i).unwrap();
            let back: FactoredIdeal = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &i);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
