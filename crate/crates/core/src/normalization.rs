//! Single-ideal normalization: towers of extensions after which the ideal
//! becomes `H^h` for a radical ideal `H`.
//!
//! Two inductive step kinds are provided. [`prime_elim_step`] removes one
//! prime from the exponents and [`split_one_step`] turns one exponent into
//! ones. [`normalize`] iterates either to a radical ideal, and
//! [`closed_form`] gives the single systems those towers compose to.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, FactorBounds};
use crate::decimal;
use crate::error::{Error, Result};
use crate::ideal::{gcd_normalize, same_spot, FactoredIdeal, Spot};
use crate::system::{
    check_realizability, compose_chain, extend, ConsistentSystem, EvidenceKind, ExtensionChain, ExtensionStep,
    Triple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// One step per prime of the exponents, ascending.
    PrimeElim,
    /// One step per site whose exponent exceeds one, in site order.
    SplitOne,
    /// One step applying the composite of the split-one tower.
    ClosedFormProduct,
    /// One step applying the composite of the prime-elimination tower.
    ClosedFormLcm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormMode {
    /// Degree `e_1 ··· e_n`.
    Product,
    /// Degree `lcm(e_1, ..., e_n)`; needs exponents with gcd 1.
    Lcm,
}

/// Result of one inductive step: `pushforward(I) = ideal^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub step: ExtensionStep,
    pub ideal: FactoredIdeal,
    pub h: BigUint,
}

fn finish_step(system: ConsistentSystem, source: &FactoredIdeal, target_exp: impl Fn(usize) -> BigUint, h: BigUint) -> Result<StepOutcome> {
    let step = extend(&system)?;
    let exponents = step.lineage().iter().map(|l| target_exp(l.parent)).collect();
    let ideal = FactoredIdeal::new(step.result_spot().clone(), exponents)?;
    debug_assert!(same_spot(source.spot(), step.system().spot()));
    Ok(StepOutcome { step, ideal, h })
}

/// Removes the prime `p` from the exponents. Requires gcd 1 and `p`
/// dividing some exponent.
///
/// With `e_i = p^{h_i} d_i` and `h_1 = max h_i`, site `i` splits into
/// `p^{h_i}` sites ramified to index `p^{h_1 - h_i}`; the new ideal has
/// exponent `d_i` above site `i` and `h = p^{h_1}`.
pub fn prime_elim_step(ideal: &FactoredIdeal, p: &BigUint) -> Result<StepOutcome> {
    if !arith::is_prime(p)? {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let g = arith::gcd_all(ideal.positive_exponents());
    if !g.is_one() {
        return Err(Error::Precondition(format!("exponents share the factor {g}")));
    }
    let spot = ideal.spot();
    // (h_i, d_i) per positive site.
    let split: Vec<Option<(u32, BigUint)>> = ideal
        .exponents()
        .iter()
        .map(|e| (!e.is_zero()).then(|| arith::split_valuation(e, p)))
        .collect();
    let top = split.iter().flatten().map(|(h, _)| *h).max().unwrap_or(0);
    if top == 0 {
        return Err(Error::Precondition(format!("{p} divides no exponent")));
    }
    let m = p.pow(top);
    let per_site = split
        .iter()
        .zip(spot.sites())
        .map(|(s, site)| match s {
            None => vec![Triple::unextended(&site.residue, m.clone(), 1u32)],
            Some((h, _)) => vec![Triple::unextended(&site.residue, p.pow(top - h), p.pow(*h))],
        })
        .collect();
    let system = ConsistentSystem::new(spot.clone(), m.clone(), per_site)?;
    finish_step(
        system,
        ideal,
        |i| split[i].as_ref().map_or_else(BigUint::zero, |(_, d)| d.clone()),
        m,
    )
}

/// Splits site `i` into `e_i` unramified sites and ramifies every other site
/// to index `e_i`; the new ideal has exponent 1 above `i` and `h = e_i`.
pub fn split_one_step(ideal: &FactoredIdeal, i: usize) -> Result<StepOutcome> {
    let spot = ideal.spot();
    if i >= spot.len() {
        return Err(Error::Precondition(format!("site index {i} out of range")));
    }
    let ei = ideal.exponent(i).clone();
    if ei.is_zero() {
        return Err(Error::Precondition(format!(
            "site {} does not contain the ideal",
            spot.site(i).label
        )));
    }
    let per_site = spot
        .sites()
        .iter()
        .enumerate()
        .map(|(k, site)| {
            if k == i {
                vec![Triple::unextended(&site.residue, 1u32, ei.clone())]
            } else {
                vec![Triple::unextended(&site.residue, ei.clone(), 1u32)]
            }
        })
        .collect();
    let system = ConsistentSystem::new(spot.clone(), ei.clone(), per_site)?;
    finish_step(
        system,
        ideal,
        |k| if k == i { BigUint::one() } else { ideal.exponent(k).clone() },
        ei,
    )
}

/// The single system a normalization tower composes to, over `ideal`'s spot.
///
/// `Product`: degree `m = Π e_i`; a site with `e_i > 1` gets `e_i` primes
/// ramified to `m / e_i`, every other site one prime ramified to `m`.
/// `Lcm`: degree `d = lcm e_i`; a site gets `e_i` primes ramified to
/// `d / e_i`, sites outside the support one prime ramified to `d`.
pub fn closed_form(ideal: &FactoredIdeal, mode: ClosedFormMode) -> Result<ConsistentSystem> {
    let spot = ideal.spot();
    let degree = match mode {
        ClosedFormMode::Product => arith::product(ideal.positive_exponents()),
        ClosedFormMode::Lcm => {
            let g = arith::gcd_all(ideal.positive_exponents());
            if !g.is_one() {
                return Err(Error::Precondition(format!(
                    "lcm closed form needs coprime exponents, gcd is {g}"
                )));
            }
            arith::lcm_all(ideal.positive_exponents())
        }
    };
    let per_site = ideal
        .exponents()
        .iter()
        .zip(spot.sites())
        .map(|(e, site)| {
            if e.is_zero() || e.is_one() {
                vec![Triple::unextended(&site.residue, degree.clone(), 1u32)]
            } else {
                vec![Triple::unextended(&site.residue, &degree / e, e.clone())]
            }
        })
        .collect();
    ConsistentSystem::new(spot.clone(), degree, per_site)
}

/// Output of [`normalize`]: `pushforward(input) = radical^h` along `chain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationReport {
    pub input: FactoredIdeal,
    pub d: BigUint,
    pub chain: ExtensionChain,
    pub radical: FactoredIdeal,
    pub h: BigUint,
    pub strategy: Strategy,
    pub oracle_verified: bool,
}

pub fn normalize(ideal: &FactoredIdeal, strategy: Strategy) -> Result<NormalizationReport> {
    normalize_with(ideal, strategy, &FactorBounds::default())
}

/// [`normalize`] with explicit factorization bounds (prime elimination
/// factors the exponents).
pub fn normalize_with(ideal: &FactoredIdeal, strategy: Strategy, bounds: &FactorBounds) -> Result<NormalizationReport> {
    let (i0, d) = gcd_normalize(ideal);
    let (chain, radical, h0) = match strategy {
        Strategy::PrimeElim => prime_elim_tower(&i0, bounds)?,
        Strategy::SplitOne => split_one_tower(&i0)?,
        Strategy::ClosedFormProduct => closed_form_tower(&i0, ClosedFormMode::Product, bounds)?,
        Strategy::ClosedFormLcm => closed_form_tower(&i0, ClosedFormMode::Lcm, bounds)?,
    };
    let mut report = NormalizationReport {
        input: ideal.clone(),
        h: &d * h0,
        d,
        chain,
        radical,
        strategy,
        oracle_verified: false,
    };
    verify_report(&mut report).map_err(|f| Error::Verification(f.to_string()))?;
    Ok(report)
}

type Tower = (ExtensionChain, FactoredIdeal, BigUint);

fn prime_elim_tower(i0: &FactoredIdeal, bounds: &FactorBounds) -> Result<Tower> {
    let mut chain = ExtensionChain::new(i0.spot().clone());
    let mut current = i0.clone();
    let mut h = BigUint::one();
    for p in arith::distinct_primes(i0.positive_exponents(), bounds)? {
        let out = prime_elim_step(&current, &p)?;
        chain.push(out.step)?;
        current = out.ideal;
        h *= out.h;
    }
    Ok((chain, current, h))
}

fn split_one_tower(i0: &FactoredIdeal) -> Result<Tower> {
    let mut chain = ExtensionChain::new(i0.spot().clone());
    let mut current = i0.clone();
    let mut h = BigUint::one();
    for base in 0..i0.spot().len() {
        if *i0.exponent(base) <= BigUint::one() {
            continue;
        }
        // Earlier steps only ramify this site, so exactly one site lies above it.
        let site = chain
            .roots()
            .iter()
            .position(|&r| r == base)
            .expect("every base site has a site above it");
        let out = split_one_step(&current, site)?;
        chain.push(out.step)?;
        current = out.ideal;
        h *= out.h;
    }
    Ok((chain, current, h))
}

fn closed_form_tower(i0: &FactoredIdeal, mode: ClosedFormMode, bounds: &FactorBounds) -> Result<Tower> {
    let spot = i0.spot().clone();
    if i0.is_radical() {
        return Ok((ExtensionChain::new(spot), i0.clone(), BigUint::one()));
    }
    let system = closed_form(i0, mode)?;
    let (inductive, _, _) = match mode {
        ClosedFormMode::Product => split_one_tower(i0)?,
        ClosedFormMode::Lcm => prime_elim_tower(i0, bounds)?,
    };
    let composed = compose_chain(&inductive)?;
    if !composed.system.canonically_equal(&system) {
        return Err(Error::Verification(format!(
            "closed form {mode:?} differs from the composed {}-step tower",
            inductive.len()
        )));
    }
    let mut step = extend(&system)?;
    if step.evidence().kind != EvidenceKind::CondI {
        step = step.with_evidence(composed.evidence);
    }
    let h = system.degree().clone();
    let exponents = step.lineage().iter().map(|l| if i0.exponent(l.parent).is_zero() { BigUint::zero() } else { BigUint::one() }).collect();
    let radical = FactoredIdeal::new(step.result_spot().clone(), exponents)?;
    let mut chain = ExtensionChain::new(spot);
    chain.push(step)?;
    Ok((chain, radical, h))
}

/// Why a report failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub site: Option<String>,
    pub message: String,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.site {
            Some(s) => write!(f, "at site {s}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn fail(site: Option<&str>, message: impl Into<String>) -> VerifyFailure {
    VerifyFailure {
        site: site.map(str::to_string),
        message: message.into(),
    }
}

/// Independent check of a report. Re-expands the input's exponents through
/// every step's lineage table (never through closed forms) and compares
/// with `radical^h`. Also checks that `radical` is radical, that every
/// residue degree is 1, that each step's evidence is justified and that the
/// tower degree divides `h`. Sets `oracle_verified`.
pub fn verify_report(report: &mut NormalizationReport) -> std::result::Result<(), VerifyFailure> {
    let outcome = check_report(report);
    report.oracle_verified = outcome.is_ok();
    outcome
}

fn check_report(r: &NormalizationReport) -> std::result::Result<(), VerifyFailure> {
    if **r.chain.base() != **r.input.spot() {
        return Err(fail(None, "chain does not start at the input's spot"));
    }
    let d = arith::gcd_all(r.input.positive_exponents());
    if d != r.d {
        return Err(fail(None, format!("stored gcd {} but the input's gcd is {d}", r.d)));
    }
    let mut spot: Arc<Spot> = r.chain.base().clone();
    let mut exps: Vec<BigUint> = r.input.exponents().to_vec();
    let mut degree = BigUint::one();
    for (n, step) in r.chain.steps().iter().enumerate() {
        let n = n + 1;
        let sys = step.system();
        if **sys.spot() != *spot {
            return Err(fail(None, format!("step {n} does not extend the previous spot")));
        }
        if let Err(v) = sys.validate() {
            return Err(fail(Some(&v.label), format!("step {n}: {v}")));
        }
        let result = step.result_spot();
        let expected: Vec<(usize, usize)> = sys
            .per_site()
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| (0..ts.len()).map(move |j| (i, j)))
            .collect();
        if step.lineage().len() != expected.len() || result.len() != expected.len() {
            return Err(fail(None, format!("step {n}: new sites do not match the triples")));
        }
        let mut next = Vec::with_capacity(expected.len());
        for (k, (l, &(i, j))) in step.lineage().iter().zip(&expected).enumerate() {
            let t = &sys.per_site()[i][j];
            let site = result.site(k);
            if l.parent != i || l.triple != j || l.e != t.e || l.f != t.f {
                return Err(fail(Some(&site.label), format!("step {n}: lineage disagrees with the system")));
            }
            if site.multiplicity != &spot.site(i).multiplicity * &t.count || site.residue != t.residue {
                return Err(fail(Some(&site.label), format!("step {n}: site data disagrees with the system")));
            }
            if !t.f.is_one() {
                return Err(fail(Some(&site.label), format!("step {n}: residue degree {} is not 1", t.f)));
            }
            next.push(&exps[i] * &l.e);
        }
        match step.evidence().kind {
            EvidenceKind::Unknown => return Err(fail(None, format!("step {n} has no realizability evidence"))),
            EvidenceKind::CondI if !(0..spot.len()).any(|i| sys.splitting_count(i).is_one()) => {
                return Err(fail(None, format!("step {n} claims a single-prime site but has none")));
            }
            _ => {}
        }
        degree *= sys.degree();
        exps = next;
        spot = result.clone();
    }
    if degree != *r.chain.total_degree() {
        return Err(fail(None, "tower degree is not the product of the step degrees"));
    }
    if **r.radical.spot() != *spot {
        return Err(fail(None, "radical ideal is not on the top spot"));
    }
    if !r.radical.is_radical() {
        let k = (0..spot.len()).find(|&k| *r.radical.exponent(k) > BigUint::one()).unwrap();
        return Err(fail(Some(&spot.site(k).label), "radical ideal has an exponent above 1"));
    }
    for (k, e) in exps.iter().enumerate() {
        let want = r.radical.exponent(k) * &r.h;
        if *e != want {
            return Err(fail(
                Some(&spot.site(k).label),
                format!("pushforward exponent {e} but radical^h gives {want}"),
            ));
        }
    }
    if !r.h.is_multiple_of(&degree) {
        return Err(fail(None, format!("tower degree {degree} does not divide h = {}", r.h)));
    }
    Ok(())
}

/// `uniformize(I)`: a tower after which every Rees integer of `I` equals `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniformization {
    pub report: NormalizationReport,
    pub m: BigUint,
}

pub fn uniformize(ideal: &FactoredIdeal) -> Result<Uniformization> {
    let report = normalize(ideal, Strategy::SplitOne)?;
    let m = report.h.clone();
    Ok(Uniformization { report, m })
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    version: u32,
    strategy: Strategy,
    input: FactoredIdeal,
    #[serde(with = "decimal")]
    d: BigUint,
    #[serde(with = "decimal")]
    h: BigUint,
    #[serde(with = "decimal::vec")]
    radical: Vec<BigUint>,
    chain: ExtensionChain,
    oracle_verified: bool,
}

impl Serialize for NormalizationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportDoc {
            version: crate::ideal::DOCUMENT_VERSION,
            strategy: self.strategy,
            input: self.input.clone(),
            d: self.d.clone(),
            h: self.h.clone(),
            radical: self.radical.exponents().to_vec(),
            chain: self.chain.clone(),
            oracle_verified: self.oracle_verified,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalizationReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ReportDoc::deserialize(d)?;
        // Share the chain's base so spot identity checks are cheap.
        let input = FactoredIdeal::new(doc.chain.base().clone(), doc.input.exponents().to_vec())
            .map_err(serde::de::Error::custom)?;
        if **doc.chain.base() != **doc.input.spot() {
            return Err(serde::de::Error::custom("report input and chain base differ"));
        }
        let radical = FactoredIdeal::new(doc.chain.top().clone(), doc.radical).map_err(serde::de::Error::custom)?;
        Ok(NormalizationReport {
            input,
            d: doc.d,
            chain: doc.chain,
            radical,
            h: doc.h,
            strategy: doc.strategy,
            oracle_verified: doc.oracle_verified,
        })
    }
}

/// Evidence check used by the realizability suites.
pub fn all_steps_cond_i(chain: &ExtensionChain) -> bool {
    chain
        .steps()
        .iter()
        .all(|s| s.evidence().kind == EvidenceKind::CondI && check_realizability(s.system()).map(|e| e.kind) == Ok(EvidenceKind::CondI))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(e: &[u64]) -> FactoredIdeal {
        FactoredIdeal::on_simple_spot(e).unwrap()
    }

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Exponents listed once per maximal ideal, grouped by base site, sorted.
    fn expanded(i: &FactoredIdeal) -> Vec<u64> {
        let mut v: Vec<u64> = i
            .expanded_rees_integers()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn prime_elim_examples() {
        let i = ideal(&[4, 6, 3]);
        let out = prime_elim_step(&i, &BigUint::from(2u8)).unwrap();
        assert_eq!(out.h, BigUint::from(4u8));
        let sys = out.step.system();
        assert_eq!(sys.degree(), &BigUint::from(4u8));
        let counts: Vec<_> = (0..3).map(|k| sys.splitting_count(k)).collect();
        assert_eq!(counts, big(&[4, 2, 1]));
        let es: Vec<_> = sys.per_site().iter().map(|ts| ts[0].e.clone()).collect();
        assert_eq!(es, big(&[1, 2, 4]));
        assert_eq!(expanded(&out.ideal), vec![1, 1, 1, 1, 3, 3, 3]);
        let pushed = crate::system::pushforward(&out.step, &i).unwrap();
        assert_eq!(expanded(&pushed), vec![4, 4, 4, 4, 12, 12, 12]);
        assert_eq!(pushed, out.ideal.pow(&out.h).unwrap());

        let out = prime_elim_step(&ideal(&[2, 3]), &BigUint::from(2u8)).unwrap();
        assert_eq!(expanded(&out.ideal), vec![1, 1, 3]);
        assert_eq!(out.h, BigUint::from(2u8));

        let err = prime_elim_step(&ideal(&[2, 3]), &BigUint::from(5u8)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = prime_elim_step(&ideal(&[2, 3]), &BigUint::from(6u8)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = prime_elim_step(&ideal(&[2, 4]), &BigUint::from(2u8)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn split_one_examples() {
        let i = ideal(&[2, 3]);
        let out = split_one_step(&i, 0).unwrap();
        assert_eq!(out.h, BigUint::from(2u8));
        assert_eq!(expanded(&out.ideal), vec![1, 1, 3]);
        assert_eq!(crate::system::pushforward(&out.step, &i).unwrap(), out.ideal.pow(&out.h).unwrap());

        let out = split_one_step(&ideal(&[1, 1]), 0).unwrap();
        assert_eq!(out.h, BigUint::one());
        assert_eq!(out.ideal.exponents(), big(&[1, 1]).as_slice());

        let out = split_one_step(&ideal(&[5]), 0).unwrap();
        assert_eq!(expanded(&out.ideal), vec![1; 5]);
        assert_eq!(out.ideal.spot().site_count(), BigUint::from(5u8));

        assert!(matches!(split_one_step(&ideal(&[0, 1]), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(&ideal(&[2, 3]), Strategy::SplitOne).unwrap();
        assert_eq!(r.chain.len(), 2);
        assert_eq!(r.chain.total_degree(), &BigUint::from(6u8));
        assert_eq!(expanded(&r.radical), vec![1; 5]);
        assert_eq!(r.h, BigUint::from(6u8));
        assert!(r.oracle_verified);

        let r = normalize(&ideal(&[2, 3]), Strategy::PrimeElim).unwrap();
        assert_eq!(r.h, BigUint::from(6u8));
        assert!(r.oracle_verified);

        for s in [Strategy::PrimeElim, Strategy::SplitOne] {
            let r = normalize(&ideal(&[5, 5]), s).unwrap();
            assert_eq!(r.d, BigUint::from(5u8));
            assert!(r.chain.is_empty());
            assert_eq!(r.radical.exponents(), big(&[1, 1]).as_slice());
            assert_eq!(r.h, BigUint::from(5u8));
        }

        let r = normalize(&ideal(&[4, 6, 3]), Strategy::PrimeElim).unwrap();
        assert_eq!(r.chain.len(), 2);
        assert_eq!(r.h, BigUint::from(12u8));
    }

    #[test]
    fn closed_form_examples() {
        let s = closed_form(&ideal(&[2, 3]), ClosedFormMode::Product).unwrap();
        assert_eq!(s.degree(), &BigUint::from(6u8));
        let k = crate::ideal::ResidueField::new("K", 1u32, true).unwrap();
        assert_eq!(s.per_site()[0], vec![Triple::unextended(&k, 3u32, 2u32)]);
        assert_eq!(s.per_site()[1], vec![Triple::unextended(&k, 2u32, 3u32)]);
        let (_, ie) = crate::system::apply_system(&s, &ideal(&[2, 3])).unwrap();
        assert_eq!(expanded(&ie), vec![6; 5]);

        let i = ideal(&[2, 4, 3]);
        let s = closed_form(&i, ClosedFormMode::Lcm).unwrap();
        assert_eq!(s.degree(), &BigUint::from(12u8));
        let shape: Vec<_> = s.per_site().iter().map(|ts| (ts[0].e.clone(), ts[0].count.clone())).collect();
        assert_eq!(shape, vec![(6u8.into(), 2u8.into()), (3u8.into(), 4u8.into()), (4u8.into(), 3u8.into())]);
        let (_, ie) = crate::system::apply_system(&s, &i).unwrap();
        assert!(ie.positive_exponents().all(|e| *e == BigUint::from(12u8)));

        let s = closed_form(&ideal(&[1, 1]), ClosedFormMode::Product).unwrap();
        assert_eq!(s, ConsistentSystem::identity(s.spot().clone()));

        assert!(closed_form(&ideal(&[2, 4]), ClosedFormMode::Lcm).is_err());
    }

    #[test]
    fn closed_form_strategies_carry_tower_evidence() {
        let r = normalize(&ideal(&[2, 3]), Strategy::ClosedFormProduct).unwrap();
        assert_eq!(r.chain.len(), 1);
        assert_eq!(r.chain.steps()[0].evidence().kind, EvidenceKind::Tower);
        assert_eq!(r.h, BigUint::from(6u8));

        let r = normalize(&ideal(&[2, 1]), Strategy::ClosedFormLcm).unwrap();
        assert_eq!(r.chain.steps()[0].evidence().kind, EvidenceKind::CondI);
        assert_eq!(r.h, BigUint::from(2u8));
    }

    #[test]
    fn uniformize_examples() {
        let u = uniformize(&ideal(&[2, 1])).unwrap();
        assert_eq!(u.m, BigUint::from(2u8));
        let pushed = u.report.chain.pushforward(&u.report.input).unwrap();
        assert_eq!(expanded(&pushed), vec![2, 2, 2]);

        let u = uniformize(&ideal(&[3, 3])).unwrap();
        assert_eq!(u.m, BigUint::from(3u8));
        assert!(u.report.chain.is_empty());

        let u = uniformize(&ideal(&[2, 3])).unwrap();
        assert_eq!(u.m, BigUint::from(6u8));
        assert!(u.m.is_multiple_of(u.report.chain.total_degree()));
    }

    #[test]
    fn verify_catches_tampering() {
        let mut r = normalize(&ideal(&[2, 3]), Strategy::SplitOne).unwrap();
        assert!(verify_report(&mut r).is_ok());
        r.h = BigUint::from(5u8);
        let f = verify_report(&mut r).unwrap_err();
        assert!(!r.oracle_verified);
        assert_eq!(f.site.as_deref(), Some("M1.j1.j1"));

        let mut r = normalize(&ideal(&[1]), Strategy::PrimeElim).unwrap();
        assert!(r.chain.is_empty());
        assert_eq!(r.h, BigUint::one());
        assert!(verify_report(&mut r).is_ok());
    }

    #[test]
    fn report_json_round_trip_keeps_verification() {
        let r = normalize(&ideal(&[4, 6, 3]), Strategy::PrimeElim).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let mut back: NormalizationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(verify_report(&mut back).is_ok());
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
