//! Simultaneous uniformization of several ideals over one spot.
//!
//! Every support site `M_{i,j}` of ideal `i` (Rees integer `e_{i,j}`,
//! target `m_i`) gets `e*_{i,j} = m_i / e_{i,j}`. The tower has one step per
//! support site: step `k` ramifies everything above `M_k` to index `e*_k`
//! and splits every other site into `e*_k` unramified copies. Afterwards
//! each Rees integer of ideal `i` equals `m_i`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::decimal;
use crate::error::{Error, Result};
use crate::ideal::{same_spot, FactoredIdeal, Spot};
use crate::system::{
    apply_system, check_realizability, compose_chain, extend, ConsistentSystem, Evidence, EvidenceKind,
    ExtensionChain, Triple,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "sites", rename_all = "snake_case")]
pub enum SupportVerdict {
    Disjoint,
    /// Shared sites satisfy `e_j m_i = e_i m_j`.
    Compatible,
    Conflict(Vec<String>),
}

fn common_spot(ideals: &[FactoredIdeal]) -> Result<Arc<Spot>> {
    let first = ideals
        .first()
        .ok_or_else(|| Error::Precondition("nothing to uniformize: no ideals given".into()))?;
    for (n, i) in ideals.iter().enumerate().skip(1) {
        if !same_spot(i.spot(), first.spot()) {
            return Err(Error::SpotMismatch(format!(
                "ideal {} lives on {}, ideal 1 on {}",
                n + 1,
                i.spot().id(),
                first.spot().id()
            )));
        }
    }
    Ok(first.spot().clone())
}

/// Classifies how the supports of the ideals overlap.
pub fn check_supports(ideals: &[FactoredIdeal], targets: &[BigUint]) -> Result<SupportVerdict> {
    let spot = common_spot(ideals)?;
    if targets.len() != ideals.len() {
        return Err(Error::Precondition(format!(
            "{} targets for {} ideals",
            targets.len(),
            ideals.len()
        )));
    }
    let mut shared = false;
    let mut conflicts = Vec::new();
    for s in 0..spot.len() {
        let holders: Vec<usize> = (0..ideals.len()).filter(|&i| !ideals[i].exponent(s).is_zero()).collect();
        if holders.len() < 2 {
            continue;
        }
        shared = true;
        let ok = holders.iter().enumerate().all(|(x, &a)| {
            holders[x + 1..].iter().all(|&b| {
                ideals[b].exponent(s) * &targets[a] == ideals[a].exponent(s) * &targets[b]
            })
        });
        if !ok {
            conflicts.push(spot.site(s).label.clone());
        }
    }
    Ok(if !conflicts.is_empty() {
        SupportVerdict::Conflict(conflicts)
    } else if shared {
        SupportVerdict::Compatible
    } else {
        SupportVerdict::Disjoint
    })
}

/// Default targets: the product of each ideal's Rees integers.
pub fn default_targets(ideals: &[FactoredIdeal]) -> Vec<BigUint> {
    ideals.iter().map(|i| i.rees_profile().product()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EstarEntry {
    pub site: String,
    #[serde(skip)]
    pub site_index: usize,
    #[serde(with = "decimal")]
    pub rees_integer: BigUint,
    #[serde(with = "decimal")]
    pub estar: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    #[serde(with = "decimal")]
    pub target: BigUint,
    /// Maximal ideals above the support after the tower.
    #[serde(with = "decimal")]
    pub multiplicity: BigUint,
    #[serde(with = "decimal")]
    pub expected_multiplicity: BigUint,
    pub uniform: bool,
}

/// The common data of every multi-ideal construction.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Shape {
    spot: Arc<Spot>,
    targets: Vec<BigUint>,
    supports: SupportVerdict,
    estars: Vec<Vec<EstarEntry>>,
    /// Union support in ideal-major, site-minor order, with its `e*`.
    order: Vec<(usize, BigUint)>,
    m: BigUint,
}

impl Shape {
    fn estar_of(&self, site: usize) -> Option<&BigUint> {
        self.order.iter().find(|(s, _)| *s == site).map(|(_, e)| e)
    }
}

fn shape(ideals: &[FactoredIdeal], targets: Option<&[BigUint]>) -> Result<Shape> {
    let spot = common_spot(ideals)?;
    let targets = match targets {
        Some(t) => t.to_vec(),
        None => default_targets(ideals),
    };
    let supports = check_supports(ideals, &targets)?;
    if let SupportVerdict::Conflict(sites) = &supports {
        return Err(Error::SupportConflict(sites.clone()));
    }
    let mut estars = Vec::with_capacity(ideals.len());
    let mut order: Vec<(usize, BigUint)> = Vec::new();
    for (n, (ideal, target)) in ideals.iter().zip(&targets).enumerate() {
        let mut row = Vec::new();
        for s in ideal.support() {
            let e = ideal.exponent(s);
            let site = spot.site(s);
            if !site.multiplicity.is_one() {
                return Err(Error::Precondition(format!(
                    "support site {} stands for {} maximal ideals; list them separately",
                    site.label, site.multiplicity
                )));
            }
            if target.is_zero() || !target.is_multiple_of(e) {
                return Err(Error::Precondition(format!(
                    "target {target} of ideal {} is not a multiple of its Rees integer {e} at {}",
                    n + 1,
                    site.label
                )));
            }
            let estar = target / e;
            if !order.iter().any(|(t, _)| *t == s) {
                order.push((s, estar.clone()));
            }
            row.push(EstarEntry {
                site: site.label.clone(),
                site_index: s,
                rees_integer: e.clone(),
                estar,
            });
        }
        estars.push(row);
    }
    let m = arith::product(order.iter().map(|(_, e)| e));
    Ok(Shape {
        spot,
        targets,
        supports,
        estars,
        order,
        m,
    })
}

/// A simultaneous-uniformization plan and, once executed, its verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiIdealPlan {
    pub spot: Arc<Spot>,
    #[serde(serialize_with = "serialize_exponent_rows")]
    pub ideals: Vec<FactoredIdeal>,
    #[serde(with = "decimal::vec")]
    pub targets: Vec<BigUint>,
    pub supports: SupportVerdict,
    pub estars: Vec<Vec<EstarEntry>>,
    #[serde(with = "decimal")]
    pub m: BigUint,
    pub chain: ExtensionChain,
    #[serde(serialize_with = "serialize_exponent_rows")]
    pub results: Vec<FactoredIdeal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<IdealVerdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_match: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn serialize_exponent_rows<S: serde::Serializer>(ideals: &[FactoredIdeal], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(ideals.len()))?;
    for i in ideals {
        let row: Vec<String> = i.exponents().iter().map(ToString::to_string).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl MultiIdealPlan {
    /// `e*` at a base site, if it lies in some support.
    pub fn estar_of(&self, site: usize) -> Option<&BigUint> {
        self.estars.iter().flatten().find(|e| e.site_index == site).map(|e| &e.estar)
    }

    pub fn is_verified(&self) -> bool {
        self.verdicts.as_ref().is_some_and(|v| v.iter().all(|x| x.uniform)) && self.closed_form_match == Some(true)
    }
}

/// Builds the tower. `targets` defaults to the product of each ideal's Rees
/// integers; supplied targets must be common multiples of them.
pub fn plan_multi(ideals: &[FactoredIdeal], targets: Option<&[BigUint]>) -> Result<MultiIdealPlan> {
    let shape = shape(ideals, targets)?;
    let mut chain = ExtensionChain::new(shape.spot.clone());
    for (site, estar) in &shape.order {
        let roots = chain.roots();
        let top = chain.top().clone();
        let per_site = top
            .sites()
            .iter()
            .zip(&roots)
            .map(|(s, &root)| {
                if root == *site {
                    vec![Triple::unextended(&s.residue, estar.clone(), 1u32)]
                } else {
                    vec![Triple::unextended(&s.residue, 1u32, estar.clone())]
                }
            })
            .collect();
        let system = ConsistentSystem::new(top, estar.clone(), per_site)?;
        chain.push(extend(&system)?)?;
    }
    let results = ideals
        .iter()
        .map(|i| chain.pushforward(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiIdealPlan {
        spot: shape.spot,
        ideals: ideals.to_vec(),
        targets: shape.targets,
        supports: shape.supports,
        estars: shape.estars,
        m: shape.m,
        chain,
        results,
        verdicts: None,
        closed_form_match: None,
        notes: Vec::new(),
    })
}

/// The single `m`-consistent system the tower composes to: each support
/// site gets `m / e*` primes ramified to `e*`, other sites split into `m`.
pub fn star_system(plan: &MultiIdealPlan) -> Result<ConsistentSystem> {
    let per_site = plan
        .spot
        .sites()
        .iter()
        .enumerate()
        .map(|(s, site)| match plan.estar_of(s) {
            Some(estar) => vec![Triple::unextended(&site.residue, estar.clone(), &plan.m / estar)],
            None => vec![Triple::unextended(&site.residue, 1u32, plan.m.clone())],
        })
        .collect();
    ConsistentSystem::new(plan.spot.clone(), plan.m.clone(), per_site)
}

/// Re-derives every pushforward from the tower and checks the outcome: each
/// Rees integer of ideal `i` is `m_i`, occurring `Σ_j m / e*_{i,j}` times;
/// the tower composes to [`star_system`]; every step has a single-prime
/// site. Any failure is returned as an error.
pub fn execute_plan(plan: &MultiIdealPlan) -> Result<MultiIdealPlan> {
    if plan.ideals.is_empty() {
        return Err(Error::Precondition("nothing to uniformize: no ideals given".into()));
    }
    let mut out = plan.clone();
    let top = plan.chain.top().clone();
    let mut verdicts = Vec::with_capacity(plan.ideals.len());
    for (n, ideal) in plan.ideals.iter().enumerate() {
        let pushed = plan.chain.pushforward(ideal)?;
        if pushed != plan.results[n] {
            return Err(Error::Verification(format!("stored result of ideal {} is stale", n + 1)));
        }
        let target = &plan.targets[n];
        let mut multiplicity = BigUint::zero();
        for (k, (e, mult)) in pushed.weighted_exponents().enumerate() {
            if e.is_zero() {
                continue;
            }
            if e != target {
                return Err(Error::Verification(format!(
                    "ideal {}: Rees integer {e} at {} differs from target {target}",
                    n + 1,
                    top.site(k).label
                )));
            }
            multiplicity += mult;
        }
        let expected: BigUint = plan.estars[n].iter().map(|e| &plan.m / &e.estar).sum();
        if multiplicity != expected {
            return Err(Error::Verification(format!(
                "ideal {}: Rees integer {target} has multiplicity {multiplicity}, expected {expected}",
                n + 1
            )));
        }
        verdicts.push(IdealVerdict {
            target: target.clone(),
            multiplicity,
            expected_multiplicity: expected,
            uniform: true,
        });
    }
    for (k, step) in plan.chain.steps().iter().enumerate() {
        if step.evidence().kind != EvidenceKind::CondI || check_realizability(step.system())?.kind != EvidenceKind::CondI {
            return Err(Error::Verification(format!("step {} lacks a single-prime site", k + 1)));
        }
    }
    let composed = compose_chain(&plan.chain)?;
    if !composed.system.canonically_equal(&star_system(plan)?) {
        return Err(Error::Verification("tower does not compose to the expected single system".into()));
    }
    out.verdicts = Some(verdicts);
    out.closed_form_match = Some(true);
    Ok(out)
}

/// The one-step alternative when the residue field at a chosen support site
/// has extensions of every degree: that site gets a single prime with
/// residue degree `m / e*` and ramification `e*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueDegreePlan {
    pub system: ConsistentSystem,
    pub evidence: Evidence,
    #[serde(with = "decimal")]
    pub m: BigUint,
    #[serde(with = "decimal::vec")]
    pub targets: Vec<BigUint>,
    #[serde(serialize_with = "serialize_exponent_rows")]
    pub results: Vec<FactoredIdeal>,
    /// Residue degree over the base of each site of the extended spot.
    #[serde(with = "decimal::vec")]
    pub residue_degrees: Vec<BigUint>,
}

/// `chosen = (ideal, j)` picks the `j`-th support site of that ideal (both
/// zero-based).
pub fn residue_degree_plan(
    ideals: &[FactoredIdeal],
    targets: Option<&[BigUint]>,
    chosen: (usize, usize),
) -> Result<ResidueDegreePlan> {
    let shape = shape(ideals, targets)?;
    if shape.supports != SupportVerdict::Disjoint {
        return Err(Error::Precondition("residue-degree plan needs disjoint supports".into()));
    }
    let entry = shape
        .estars
        .get(chosen.0)
        .and_then(|row| row.get(chosen.1))
        .ok_or_else(|| Error::Precondition(format!("no support site ({}, {})", chosen.0 + 1, chosen.1 + 1)))?;
    let chosen_site = shape.spot.site(entry.site_index);
    if !chosen_site.residue.admits_all_degrees() {
        return Err(Error::Precondition(format!(
            "residue field {} of {} is not declared to admit extensions of every degree",
            chosen_site.residue.label(),
            chosen_site.label
        )));
    }
    let per_site = shape
        .spot
        .sites()
        .iter()
        .enumerate()
        .map(|(s, site)| {
            if s == entry.site_index {
                let f = &shape.m / &entry.estar;
                vec![Triple::new(site.residue.extension(&f), f, entry.estar.clone(), 1u32)]
            } else {
                match shape.estar_of(s) {
                    Some(estar) => vec![Triple::unextended(&site.residue, estar.clone(), &shape.m / estar)],
                    None => vec![Triple::unextended(&site.residue, 1u32, shape.m.clone())],
                }
            }
        })
        .collect();
    let system = ConsistentSystem::new(shape.spot.clone(), shape.m.clone(), per_site)?;
    let evidence = check_realizability(&system)?;
    let mut results = Vec::with_capacity(ideals.len());
    let mut residue_degrees = Vec::new();
    for ideal in ideals {
        let (step, pushed) = apply_system(&system, ideal)?;
        residue_degrees = step.lineage().iter().map(|l| l.f.clone()).collect();
        results.push(pushed);
    }
    Ok(ResidueDegreePlan {
        system,
        evidence,
        m: shape.m,
        targets: shape.targets,
        results,
        residue_degrees,
    })
}

/// Rees integers of `pushed` with multiplicities weighted by residue degree
/// (`Σ multiplicity · f` per value), ascending by value.
pub fn degree_weighted_multiplicities(pushed: &FactoredIdeal, residue_degrees: &[BigUint]) -> Vec<(BigUint, BigUint)> {
    let mut out: Vec<(BigUint, BigUint)> = Vec::new();
    for ((e, mult), f) in pushed.weighted_exponents().zip(residue_degrees) {
        if e.is_zero() {
            continue;
        }
        let w = mult * f;
        match out.iter_mut().find(|(v, _)| v == e) {
            Some((_, m)) => *m += w,
            None => out.push((e.clone(), w)),
        }
    }
    out.sort();
    out
}

/// Plan for the leading ideals of an asymptotic sequence. The sequence
/// property is taken as declared; only disjointness of the supports is
/// checked here.
pub fn asymptotic_wrapper(ideals: &[FactoredIdeal], targets: Option<&[BigUint]>) -> Result<MultiIdealPlan> {
    let t = targets.map_or_else(|| default_targets(ideals), <[BigUint]>::to_vec);
    match check_supports(ideals, &t)? {
        SupportVerdict::Disjoint => {}
        _ => {
            return Err(Error::Precondition(
                "the ideals must have pairwise disjoint sets of Rees valuations".into(),
            ))
        }
    }
    let mut plan = execute_plan(&plan_multi(ideals, Some(&t))?)?;
    plan.notes.push("disjointness of Rees valuations verified on the factored model".into());
    plan.notes.push("asymptotic-sequence property declared by the caller, not checked".into());
    Ok(plan)
}
