//! Consistent systems of (residue extension, f, e) triples, their
//! application to spots and ideals, and towers of such extensions.
//!
//! A triple carries a `count`: the number of identical maximal ideals it
//! describes. `{(K,1,3) x 2}` is one triple with `count = 2`; it yields a
//! single site record of multiplicity 2 in the extended spot.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal;
use crate::error::{Error, Result, Violation};
use crate::ideal::{same_spot, FactoredIdeal, Provenance, ResidueField, Site, Spot};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub residue: ResidueField,
    #[serde(with = "decimal")]
    pub f: BigUint,
    #[serde(with = "decimal")]
    pub e: BigUint,
    #[serde(
        with = "decimal",
        default = "decimal::one",
        skip_serializing_if = "decimal::is_one"
    )]
    pub count: BigUint,
}

impl Triple {
    pub fn new(residue: ResidueField, f: impl Into<BigUint>, e: impl Into<BigUint>, count: impl Into<BigUint>) -> Self {
        Triple {
            residue,
            f: f.into(),
            e: e.into(),
            count: count.into(),
        }
    }

    /// Unextended residue field, `count` copies ramified to index `e`.
    pub fn unextended(residue: &ResidueField, e: impl Into<BigUint>, count: impl Into<BigUint>) -> Self {
        Triple::new(residue.clone(), 1u32, e, count)
    }

    /// `count * e * f`.
    pub fn weight(&self) -> BigUint {
        &self.count * &self.e * &self.f
    }
}

/// An `m`-consistent system: one list of triples per site of `spot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistentSystem {
    spot: Arc<Spot>,
    degree: BigUint,
    per_site: Vec<Vec<Triple>>,
}

impl ConsistentSystem {
    /// Checks shape only (list count, positive entries, residue degrees).
    /// The degree sums are checked by [`ConsistentSystem::validate`].
    pub fn new(spot: Arc<Spot>, degree: impl Into<BigUint>, per_site: Vec<Vec<Triple>>) -> Result<Self> {
        let degree = degree.into();
        if degree.is_zero() {
            return Err(Error::MalformedSystem("degree must be positive".into()));
        }
        if per_site.len() != spot.len() {
            return Err(Error::MalformedSystem(format!(
                "{} triple lists for {} sites",
                per_site.len(),
                spot.len()
            )));
        }
        for (i, triples) in per_site.iter().enumerate() {
            let site = spot.site(i);
            for t in triples {
                if t.f.is_zero() || t.e.is_zero() || t.count.is_zero() {
                    return Err(Error::MalformedSystem(format!(
                        "site {}: f, e and count must be positive",
                        site.label
                    )));
                }
                if *t.residue.degree() != site.residue.degree() * &t.f {
                    return Err(Error::MalformedSystem(format!(
                        "site {}: residue {} has degree {}, expected {} * {}",
                        site.label,
                        t.residue.label(),
                        t.residue.degree(),
                        t.f,
                        site.residue.degree()
                    )));
                }
            }
        }
        Ok(ConsistentSystem {
            spot,
            degree,
            per_site,
        })
    }

    /// The degree-1 system: every site stays put.
    pub fn identity(spot: Arc<Spot>) -> Self {
        let per_site = spot
            .sites()
            .iter()
            .map(|s| vec![Triple::unextended(&s.residue, 1u32, 1u32)])
            .collect();
        ConsistentSystem {
            spot,
            degree: BigUint::one(),
            per_site,
        }
    }

    pub fn spot(&self) -> &Arc<Spot> {
        &self.spot
    }

    pub fn degree(&self) -> &BigUint {
        &self.degree
    }

    pub fn per_site(&self) -> &[Vec<Triple>] {
        &self.per_site
    }

    /// Number of maximal ideals above site `i` (the `s_i` of the system).
    pub fn splitting_count(&self, i: usize) -> BigUint {
        self.per_site[i].iter().map(|t| &t.count).sum()
    }

    /// Every site's `Σ count·e·f` must equal the degree.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, triples) in self.per_site.iter().enumerate() {
            let sum: BigUint = triples.iter().map(Triple::weight).sum();
            if triples.is_empty() || sum != self.degree {
                return Err(Violation {
                    site: i,
                    label: self.spot.site(i).label.clone(),
                    sum,
                    expected: self.degree.clone(),
                });
            }
        }
        Ok(())
    }

    /// Triples sorted by `(e, f, residue label)` with equal triples merged.
    pub fn canonical(&self) -> ConsistentSystem {
        let per_site = self
            .per_site
            .iter()
            .map(|triples| {
                let mut sorted = triples.clone();
                sorted.sort_by(|a, b| {
                    (&a.e, &a.f, a.residue.label(), a.residue.degree())
                        .cmp(&(&b.e, &b.f, b.residue.label(), b.residue.degree()))
                });
                let mut merged: Vec<Triple> = Vec::with_capacity(sorted.len());
                for t in sorted {
                    match merged.last_mut() {
                        Some(last) if last.e == t.e && last.f == t.f && last.residue == t.residue => {
                            last.count += t.count;
                        }
                        _ => merged.push(t),
                    }
                }
                merged
            })
            .collect();
        ConsistentSystem {
            spot: self.spot.clone(),
            degree: self.degree.clone(),
            per_site,
        }
    }

    pub fn canonically_equal(&self, other: &ConsistentSystem) -> bool {
        same_spot(&self.spot, &other.spot) && self.canonical().per_site == other.canonical().per_site
            && self.degree == other.degree
    }
}

impl Serialize for ConsistentSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            spot: &'a Spot,
            #[serde(with = "decimal")]
            degree: &'a BigUint,
            per_site: &'a [Vec<Triple>],
        }
        Doc {
            spot: &self.spot,
            degree: &self.degree,
            per_site: &self.per_site,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConsistentSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc {
            spot: Spot,
            #[serde(with = "decimal")]
            degree: BigUint,
            per_site: Vec<Vec<Triple>>,
        }
        let doc = Doc::deserialize(d)?;
        ConsistentSystem::new(Arc::new(doc.spot), doc.degree, doc.per_site).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvidenceKind {
    /// Some site has exactly one maximal ideal above it.
    CondI,
    /// The base admits a further rank-one discrete valuation.
    CondII,
    /// The base has the approximation property.
    CondIII,
    /// Composition of layers that are each realizable.
    Tower,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub detail: String,
}

impl Evidence {
    pub fn is_known(&self) -> bool {
        self.kind != EvidenceKind::Unknown
    }
}

/// Krull's sufficient conditions for realizability. Never concludes that a
/// system is unrealizable; `Unknown` means no sufficient condition applied.
pub fn check_realizability(system: &ConsistentSystem) -> Result<Evidence> {
    system.validate().map_err(Error::Inconsistent)?;
    if let Some(i) = (0..system.spot.len()).find(|&i| system.splitting_count(i).is_one()) {
        return Ok(Evidence {
            kind: EvidenceKind::CondI,
            detail: format!("site {} has a single maximal ideal above it", system.spot.site(i).label),
        });
    }
    let flags = system.spot.flags();
    if flags.has_extra_valuation {
        return Ok(Evidence {
            kind: EvidenceKind::CondII,
            detail: format!("spot {} declares a further discrete valuation", system.spot.id()),
        });
    }
    if flags.has_approximation_property {
        return Ok(Evidence {
            kind: EvidenceKind::CondIII,
            detail: format!("spot {} declares the approximation property", system.spot.id()),
        });
    }
    Ok(Evidence {
        kind: EvidenceKind::Unknown,
        detail: "no sufficient condition applies".into(),
    })
}

/// Where a site of an extended spot came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lineage {
    pub parent: usize,
    pub triple: usize,
    #[serde(with = "decimal")]
    pub e: BigUint,
    #[serde(with = "decimal")]
    pub f: BigUint,
}

/// One applied system: the extended spot and the site lineage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    system: ConsistentSystem,
    result_spot: Arc<Spot>,
    lineage: Vec<Lineage>,
    evidence: Evidence,
}

impl ExtensionStep {
    pub fn system(&self) -> &ConsistentSystem {
        &self.system
    }

    pub fn result_spot(&self) -> &Arc<Spot> {
        &self.result_spot
    }

    pub fn lineage(&self) -> &[Lineage] {
        &self.lineage
    }

    pub fn evidence(&self) -> &Evidence {
        &self.evidence
    }

    pub fn degree(&self) -> &BigUint {
        self.system.degree()
    }

    pub(crate) fn with_evidence(mut self, evidence: Evidence) -> Self {
        self.evidence = evidence;
        self
    }

    /// Builds the step from parts read back from storage, checking that the
    /// lineage and the result spot agree with the system.
    pub fn from_parts(
        system: ConsistentSystem,
        result_spot: Arc<Spot>,
        lineage: Vec<Lineage>,
        evidence: Evidence,
    ) -> Result<Self> {
        let rebuilt = extend(&system)?;
        if rebuilt.lineage != lineage {
            return Err(Error::BrokenChain("stored lineage disagrees with the system".into()));
        }
        if *rebuilt.result_spot != *result_spot {
            return Err(Error::BrokenChain(format!(
                "stored spot {} disagrees with the system",
                result_spot.id()
            )));
        }
        Ok(ExtensionStep {
            system,
            result_spot,
            lineage,
            evidence,
        })
    }
}

/// The extended spot of a system: one site per triple, labelled
/// `<parent>.j<k>` for the `k`-th triple above `<parent>`.
pub fn extend(system: &ConsistentSystem) -> Result<ExtensionStep> {
    let evidence = check_realizability(system)?;
    let parent = system.spot();
    let mut sites = Vec::new();
    let mut lineage = Vec::new();
    for (i, triples) in system.per_site.iter().enumerate() {
        let p = parent.site(i);
        for (j, t) in triples.iter().enumerate() {
            sites.push(Site {
                label: format!("{}.j{}", p.label, j + 1),
                residue: t.residue.clone(),
                multiplicity: &p.multiplicity * &t.count,
            });
            lineage.push(Lineage {
                parent: i,
                triple: j,
                e: t.e.clone(),
                f: t.f.clone(),
            });
        }
    }
    let result_spot = Spot::with_provenance(
        format!("{}/{}", parent.id(), system.degree),
        sites,
        parent.flags(),
        Provenance::ExtensionOf {
            parent: parent.id().to_string(),
            degree: system.degree.clone(),
        },
    )?;
    Ok(ExtensionStep {
        system: system.clone(),
        result_spot: Arc::new(result_spot),
        lineage,
        evidence,
    })
}

/// Extension of `ideal` along `step`: exponent `e_i · e_{i,j}` at each new site.
pub fn pushforward(step: &ExtensionStep, ideal: &FactoredIdeal) -> Result<FactoredIdeal> {
    if !same_spot(ideal.spot(), step.system.spot()) {
        return Err(Error::SpotMismatch(format!(
            "ideal lives on {}, step extends {}",
            ideal.spot().id(),
            step.system.spot().id()
        )));
    }
    let exponents = step
        .lineage
        .iter()
        .map(|l| ideal.exponent(l.parent) * &l.e)
        .collect();
    FactoredIdeal::new(step.result_spot.clone(), exponents)
}

pub fn apply_system(system: &ConsistentSystem, ideal: &FactoredIdeal) -> Result<(ExtensionStep, FactoredIdeal)> {
    if !same_spot(ideal.spot(), system.spot()) {
        return Err(Error::SpotMismatch(format!(
            "ideal lives on {}, system is over {}",
            ideal.spot().id(),
            system.spot().id()
        )));
    }
    let step = extend(system)?;
    let ie = pushforward(&step, ideal)?;
    Ok((step, ie))
}

/// A tower of extension steps over a base spot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionChain {
    base: Arc<Spot>,
    steps: Vec<ExtensionStep>,
    total_degree: BigUint,
}

impl ExtensionChain {
    pub fn new(base: Arc<Spot>) -> Self {
        ExtensionChain {
            base,
            steps: Vec::new(),
            total_degree: BigUint::one(),
        }
    }

    pub fn base(&self) -> &Arc<Spot> {
        &self.base
    }

    pub fn steps(&self) -> &[ExtensionStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_degree(&self) -> &BigUint {
        &self.total_degree
    }

    /// Spot at the top of the tower.
    pub fn top(&self) -> &Arc<Spot> {
        self.steps.last().map_or(&self.base, |s| &s.result_spot)
    }

    pub fn push(&mut self, step: ExtensionStep) -> Result<()> {
        if !same_spot(self.top(), step.system.spot()) {
            return Err(Error::BrokenChain(format!(
                "step extends {} but the tower ends at {}",
                step.system.spot().id(),
                self.top().id()
            )));
        }
        self.total_degree *= step.system.degree();
        self.steps.push(step);
        Ok(())
    }

    /// For each site of the top spot, the index of the base site below it.
    pub fn roots(&self) -> Vec<usize> {
        let mut roots: Vec<usize> = (0..self.base.len()).collect();
        for step in &self.steps {
            roots = step.lineage.iter().map(|l| roots[l.parent]).collect();
        }
        roots
    }

    /// Pushforward of a base ideal to the top of the tower.
    pub fn pushforward(&self, ideal: &FactoredIdeal) -> Result<FactoredIdeal> {
        if !same_spot(ideal.spot(), &self.base) {
            return Err(Error::SpotMismatch(format!(
                "ideal lives on {}, chain starts at {}",
                ideal.spot().id(),
                self.base.id()
            )));
        }
        let mut current = ideal.clone();
        for step in &self.steps {
            current = pushforward(step, &current)?;
        }
        Ok(current)
    }
}

/// A single system over the base equivalent to the whole tower, plus its
/// realizability evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedSystem {
    pub system: ConsistentSystem,
    pub evidence: Evidence,
}

/// Collapses a tower into one system over its base: each base site gets a
/// triple per top-level site above it, with `e` and `f` multiplied along
/// the path.
pub fn compose_chain(chain: &ExtensionChain) -> Result<ComposedSystem> {
    let base = chain.base.clone();
    if chain.steps.is_empty() {
        let system = ConsistentSystem::identity(base);
        let evidence = check_realizability(&system)?;
        return Ok(ComposedSystem { system, evidence });
    }
    // (root, e, f, count) for every site of the current level.
    let mut acc: Vec<(usize, BigUint, BigUint, BigUint)> = (0..base.len())
        .map(|i| (i, BigUint::one(), BigUint::one(), BigUint::one()))
        .collect();
    let mut current = base.clone();
    for (k, step) in chain.steps.iter().enumerate() {
        if !same_spot(&current, step.system.spot()) {
            return Err(Error::BrokenChain(format!("step {} does not extend its predecessor", k + 1)));
        }
        acc = step
            .lineage
            .iter()
            .map(|l| {
                let (root, e, f, count) = &acc[l.parent];
                let t = &step.system.per_site[l.parent][l.triple];
                (*root, e * &t.e, f * &t.f, count * &t.count)
            })
            .collect();
        current = step.result_spot.clone();
    }
    let mut per_site: Vec<Vec<Triple>> = vec![Vec::new(); base.len()];
    for (k, (root, e, f, count)) in acc.into_iter().enumerate() {
        per_site[root].push(Triple {
            residue: current.site(k).residue.clone(),
            f,
            e,
            count,
        });
    }
    let system = ConsistentSystem::new(base, chain.total_degree.clone(), per_site)?;
    system.validate().map_err(Error::Inconsistent)?;
    let evidence = if chain.steps.len() == 1 {
        chain.steps[0].evidence.clone()
    } else if chain.steps.iter().all(|s| s.evidence.is_known()) {
        let kinds: Vec<String> = chain.steps.iter().map(|s| format!("{:?}", s.evidence.kind)).collect();
        Evidence {
            kind: EvidenceKind::Tower,
            detail: format!("composition of {} realizable layers [{}]", chain.steps.len(), kinds.join(", ")),
        }
    } else {
        check_realizability(&system)?
    };
    Ok(ComposedSystem { system, evidence })
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    #[serde(with = "decimal")]
    degree: BigUint,
    per_site: Vec<Vec<Triple>>,
    result_spot: Spot,
    lineage: Vec<Lineage>,
    evidence: Evidence,
}

#[derive(Serialize, Deserialize)]
struct ChainDoc {
    base: Spot,
    #[serde(with = "decimal")]
    total_degree: BigUint,
    steps: Vec<StepDoc>,
}

impl Serialize for ExtensionChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainDoc {
            base: (*self.base).clone(),
            total_degree: self.total_degree.clone(),
            steps: self
                .steps
                .iter()
                .map(|st| StepDoc {
                    degree: st.system.degree.clone(),
                    per_site: st.system.per_site.clone(),
                    result_spot: (*st.result_spot).clone(),
                    lineage: st.lineage.clone(),
                    evidence: st.evidence.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtensionChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ChainDoc::deserialize(d)?;
        let build = || -> Result<ExtensionChain> {
            let mut chain = ExtensionChain::new(Arc::new(doc.base));
            for st in doc.steps {
                let system = ConsistentSystem::new(chain.top().clone(), st.degree, st.per_site)?;
                let step = ExtensionStep::from_parts(system, Arc::new(st.result_spot), st.lineage, st.evidence)?;
                chain.push(step)?;
            }
            if chain.total_degree != doc.total_degree {
                return Err(Error::BrokenChain(format!(
                    "stored total degree {} but steps multiply to {}",
                    doc.total_degree, chain.total_degree
                )));
            }
            Ok(chain)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> ResidueField {
        ResidueField::new("K", 1u32, true).unwrap()
    }

    fn t(e: u64, count: u64) -> Triple {
        Triple::unextended(&k(), e, count)
    }

    fn system(m: u64, per_site: Vec<Vec<Triple>>) -> ConsistentSystem {
        ConsistentSystem::new(Spot::simple(per_site.len()), m, per_site).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = system(6, vec![vec![t(3, 1), t(3, 1)], vec![t(2, 3)]]);
        assert!(s.validate().is_ok());

        let s = system(4, vec![vec![t(1, 4)], vec![t(3, 1)]]);
        let v = s.validate().unwrap_err();
        assert_eq!((v.site, v.sum.clone(), v.expected.clone()), (1, 3u8.into(), 4u8.into()));

        let k2 = k().extension(&BigUint::from(2u8));
        let s = system(2, vec![vec![Triple::new(k2, 2u32, 1u32, 1u32)], vec![t(2, 1)]]);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn empty_list_is_a_violation() {
        let s = system(1, vec![vec![t(1, 1)], vec![]]);
        assert_eq!(s.validate().unwrap_err().site, 1);
    }

    #[test]
    fn residue_degree_must_match_f() {
        let err = ConsistentSystem::new(Spot::simple(1), 2u32, vec![vec![Triple::new(k(), 2u32, 1u32, 1u32)]]);
        assert!(matches!(err, Err(Error::MalformedSystem(_))));
    }

    #[test]
    fn realizability_examples() {
        let s = system(2, vec![vec![t(1, 2)], vec![t(2, 1)]]);
        assert_eq!(check_realizability(&s).unwrap().kind, EvidenceKind::CondI);

        let per_site = vec![vec![t(1, 2)], vec![t(1, 2)]];
        assert_eq!(check_realizability(&system(2, per_site.clone())).unwrap().kind, EvidenceKind::Unknown);

        let base = Spot::simple(2);
        let flagged = Arc::new(
            Spot::base(
                "D",
                base.sites().to_vec(),
                crate::ideal::SpotFlags {
                    has_extra_valuation: true,
                    has_approximation_property: false,
                },
            )
            .unwrap(),
        );
        let s = ConsistentSystem::new(flagged, 2u32, per_site).unwrap();
        assert_eq!(check_realizability(&s).unwrap().kind, EvidenceKind::CondII);

        let bad = system(3, vec![vec![t(1, 2)], vec![t(1, 2)]]);
        assert!(matches!(check_realizability(&bad), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn apply_identity() {
        let i = FactoredIdeal::on_simple_spot(&[1]).unwrap();
        let s = ConsistentSystem::identity(i.spot().clone());
        let (step, ie) = apply_system(&s, &i).unwrap();
        assert_eq!(ie.exponents(), &[BigUint::one()]);
        assert_eq!(step.result_spot().site(0).label, "M1.j1");
    }

    #[test]
    fn apply_rejects_spot_mismatch() {
        let i = FactoredIdeal::on_simple_spot(&[1, 2]).unwrap();
        let other = Arc::new(Spot::base("E", i.spot().sites().to_vec(), Default::default()).unwrap());
        let s = ConsistentSystem::new(other, 1u32, vec![vec![t(1, 1)], vec![t(1, 1)]]).unwrap();
        assert!(matches!(apply_system(&s, &i), Err(Error::SpotMismatch(_))));
    }

    #[test]
    fn canonical_merges_and_sorts() {
        let s = system(6, vec![vec![t(3, 1), t(1, 1), t(3, 1), t(1, 1)]]);
        let c = s.canonical();
        assert_eq!(c.per_site()[0], vec![t(1, 2), t(3, 2)]);
        assert!(c.canonically_equal(&s));
    }

    #[test]
    fn chain_rejects_broken_adjacency() {
        let spot = Spot::simple(1);
        let step = extend(&ConsistentSystem::new(spot.clone(), 2u32, vec![vec![t(1, 2)]]).unwrap()).unwrap();
        let mut chain = ExtensionChain::new(spot);
        chain.push(step.clone()).unwrap();
        assert!(matches!(chain.push(step), Err(Error::BrokenChain(_))));
    }

    #[test]
    fn compose_empty_and_single() {
        let spot = Spot::simple(2);
        let chain = ExtensionChain::new(spot.clone());
        let c = compose_chain(&chain).unwrap();
        assert_eq!(c.system, ConsistentSystem::identity(spot.clone()));

        let s = ConsistentSystem::new(spot.clone(), 2u32, vec![vec![t(1, 2)], vec![t(2, 1)]]).unwrap();
        let mut chain = ExtensionChain::new(spot);
        chain.push(extend(&s).unwrap()).unwrap();
        let c = compose_chain(&chain).unwrap();
        assert_eq!(c.system, s);
        assert_eq!(c.evidence.kind, EvidenceKind::CondI);
    }

    #[test]
    fn compose_multiplies_along_paths() {
        let spot = Spot::simple(1);
        let s1 = ConsistentSystem::new(spot.clone(), 2u32, vec![vec![t(1, 1), t(1, 1)]]).unwrap();
        let mut chain = ExtensionChain::new(spot);
        let st1 = extend(&s1).unwrap();
        let top = st1.result_spot().clone();
        chain.push(st1).unwrap();
        let s2 = ConsistentSystem::new(top, 3u32, vec![vec![t(3, 1)], vec![t(1, 3)]]).unwrap();
        chain.push(extend(&s2).unwrap()).unwrap();
        let c = compose_chain(&chain).unwrap();
        assert_eq!(c.system.degree(), &BigUint::from(6u8));
        assert_eq!(c.system.canonical().per_site()[0], vec![t(1, 3), t(3, 1)]);
        // The first layer has no single-prime site and the composite has
        // four primes above M1, so no sufficient condition applies.
        assert_eq!(c.evidence.kind, EvidenceKind::Unknown);
    }

    #[test]
    fn chain_json_round_trip_rebuilds_and_checks() {
        let i = FactoredIdeal::on_simple_spot(&[2, 3]).unwrap();
        let spot = i.spot().clone();
        let s = ConsistentSystem::new(spot.clone(), 2u32, vec![vec![t(1, 2)], vec![t(2, 1)]]).unwrap();
        let mut chain = ExtensionChain::new(spot);
        chain.push(extend(&s).unwrap()).unwrap();
        let text = serde_json::to_string(&chain).unwrap();
        let back: ExtensionChain = serde_json::from_str(&text).unwrap();
        assert_eq!(back, chain);

        let tampered = text.replace("\"total_degree\":\"2\"", "\"total_degree\":\"4\"");
        assert!(serde_json::from_str::<ExtensionChain>(&tampered).is_err());
    }
}
