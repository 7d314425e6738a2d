//! Concrete Dedekind rings whose elements factor into prime ideals: `Z`,
//! `F_p[x]` and `Q[x]`. Factoring a nonzero nonunit element yields a
//! [`FactoredIdeal`] on the spot of its prime divisors.

pub mod fp;
pub mod rational;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, FactorBounds};
use crate::error::{Error, Result};
use crate::ideal::{FactoredIdeal, ResidueField, Site, Spot, SpotFlags};

use fp::FpPoly;
use rational::QPoly;

/// Largest characteristic accepted for `F_p[x]` (coefficient products must fit in `u64`).
pub const MAX_FIELD_CHARACTERISTIC: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ring", rename_all = "snake_case")]
pub enum ConcreteRing {
    Integers,
    PolynomialOverPrimeField { p: u64 },
    PolynomialOverRationals,
}

impl fmt::Display for ConcreteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcreteRing::Integers => write!(f, "Z"),
            ConcreteRing::PolynomialOverPrimeField { p } => write!(f, "F_{p}[x]"),
            ConcreteRing::PolynomialOverRationals => write!(f, "Q[x]"),
        }
    }
}

// Every ring here has infinitely many primes, so any semilocal localization
// misses some valuation of the fraction field.
fn flags() -> SpotFlags {
    SpotFlags {
        has_extra_valuation: true,
        has_approximation_property: false,
    }
}

/// Factors a nonzero nonunit integer; the sign is a unit and is dropped.
pub fn factor_integer(n: &BigInt, bounds: &FactorBounds) -> Result<FactoredIdeal> {
    let m = n.abs().to_biguint().expect("absolute value");
    if m.is_zero() || m.is_one() {
        return Err(Error::UnitOrZero(format!("{n} generates the {} ideal of Z", if m.is_zero() { "zero" } else { "unit" })));
    }
    let factors = factorize(&m, bounds)?;
    let mut sites = Vec::with_capacity(factors.len());
    let mut exps = Vec::with_capacity(factors.len());
    for (p, k) in factors {
        let res = ResidueField::new(format!("F_{p}"), 1u32, true)?;
        sites.push(Site::new(format!("({p})"), res));
        exps.push(BigUint::from(k));
    }
    // Named by its primes, so integers with the same prime divisors share a spot.
    let primes: Vec<&str> = sites.iter().map(|s| s.label.trim_matches(|c| c == '(' || c == ')')).collect();
    let id = format!("Z_({})", primes.join(","));
    let spot = Spot::base(id, sites, flags())?;
    FactoredIdeal::new(Arc::new(spot), exps)
}

/// Parses coefficients, highest degree first, separated by commas and/or
/// whitespace. Entries may be integers or fractions `a/b`.
pub fn parse_coefficients(s: &str) -> Result<Vec<BigRational>> {
    let out: Vec<BigRational> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Error::Parse(format!("bad coefficient {t:?}"));
            match t.split_once('/') {
                Some((a, b)) => {
                    let a: BigInt = a.parse().map_err(|_| bad())?;
                    let b: BigInt = b.parse().map_err(|_| bad())?;
                    if b.is_zero() {
                        return Err(bad());
                    }
                    Ok(BigRational::new(a, b))
                }
                None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
            }
        })
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Parse("no coefficients given".into()));
    }
    Ok(out)
}

fn check_characteristic(p: u64, bounds: &FactorBounds) -> Result<()> {
    if p > MAX_FIELD_CHARACTERISTIC || p > bounds.trial_limit.max(2) {
        return Err(Error::Precondition(format!(
            "characteristic {p} exceeds the supported bound {}",
            MAX_FIELD_CHARACTERISTIC.min(bounds.trial_limit.max(2))
        )));
    }
    if !is_prime(&BigUint::from(p))? {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    Ok(())
}

fn reduce_mod(c: &BigRational, p: u64) -> Result<u64> {
    if !c.is_integer() {
        return Err(Error::Parse(format!("coefficient {c} is not an integer")));
    }
    let r = c.to_integer() % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    Ok(r.to_u64().expect("reduced residue"))
}

/// Factors a polynomial (coefficients highest degree first) in `F_p[x]` or
/// `Q[x]`. Constant and zero polynomials are rejected.
pub fn factor_polynomial(
    coeffs: &[BigRational],
    ring: ConcreteRing,
    bounds: &FactorBounds,
) -> Result<FactoredIdeal> {
    let (sites, exps): (Vec<Site>, Vec<BigUint>) = match ring {
        ConcreteRing::Integers => {
            return Err(Error::Precondition("Z is not a polynomial ring; use factor_integer".into()))
        }
        ConcreteRing::PolynomialOverPrimeField { p } => {
            check_characteristic(p, bounds)?;
            let low_first = coeffs
                .iter()
                .rev()
                .map(|c| reduce_mod(c, p))
                .collect::<Result<Vec<_>>>()?;
            let f = FpPoly::new(p, low_first);
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::UnitOrZero(format!("{} is a unit or zero in F_{p}[x]", f.render())));
            }
            fp::factor(&f)
                .into_iter()
                .map(|(g, k)| {
                    let r = g.render();
                    let res = ResidueField::new(format!("F_{p}[x]/({r})"), g.degree().unwrap() as u64, true)?;
                    Ok((Site::new(format!("({r})"), res), BigUint::from(k)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip()
        }
        ConcreteRing::PolynomialOverRationals => {
            let f = QPoly::from_high_first(coeffs);
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::UnitOrZero(format!("{} is a unit or zero in Q[x]", f.render())));
            }
            rational::factor(&f, bounds)?
                .into_iter()
                .map(|(g, k)| {
                    let r = g.render();
                    let res = ResidueField::new(format!("Q[x]/({r})"), g.degree().unwrap() as u64, true)?;
                    Ok((Site::new(format!("({r})"), res), BigUint::from(k)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip()
        }
    };
    let spot = Spot::base(ring.to_string(), sites, flags())?;
    FactoredIdeal::new(Arc::new(spot), exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn coeffs(s: &str) -> Vec<BigRational> {
        parse_coefficients(s).unwrap()
    }

    #[test]
    fn integer_72() {
        let i = factor_integer(&BigInt::from(-72), &FactorBounds::default()).unwrap();
        assert_eq!(i.exponents(), &[b(3), b(2)]);
        let labels: Vec<_> = i.spot().sites().iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, ["(2)", "(3)"]);
        assert_eq!(i.spot().site(1).residue.label(), "F_3");
        assert!(i.spot().flags().has_extra_valuation);
        assert_eq!(i.spot().id(), "Z_(2,3)");
        let j = factor_integer(&BigInt::from(12), &FactorBounds::default()).unwrap();
        assert_eq!(i.spot(), j.spot());
    }

    #[test]
    fn integer_units_and_zero_are_rejected() {
        for n in [-1i64, 0, 1] {
            assert!(matches!(
                factor_integer(&BigInt::from(n), &FactorBounds::default()),
                Err(Error::UnitOrZero(_))
            ));
        }
    }

    #[test]
    fn polynomials_over_f2() {
        let ring = ConcreteRing::PolynomialOverPrimeField { p: 2 };
        let i = factor_polynomial(&coeffs("1,1,0"), ring, &FactorBounds::default()).unwrap();
        assert_eq!(i.exponents(), &[b(1), b(1)]);
        let i = factor_polynomial(&coeffs("1 0 1"), ring, &FactorBounds::default()).unwrap();
        assert_eq!(i.exponents(), &[b(2)]);
        assert_eq!(i.spot().site(0).label, "(x + 1)");
        assert_eq!(i.spot().site(0).residue.label(), "F_2[x]/(x + 1)");
        assert!(factor_polynomial(&coeffs("2 0 4"), ring, &FactorBounds::default()).is_err());
        let ring4 = ConcreteRing::PolynomialOverPrimeField { p: 4 };
        assert!(factor_polynomial(&coeffs("1 0 1"), ring4, &FactorBounds::default()).is_err());
    }

    #[test]
    fn polynomial_over_q() {
        let i = factor_polynomial(&coeffs("1,0,0,-1"), ConcreteRing::PolynomialOverRationals, &FactorBounds::default())
            .unwrap();
        let degs: Vec<_> = i.spot().sites().iter().map(|s| s.residue.degree().clone()).collect();
        assert_eq!(degs, [b(1), b(2)]);
        assert_eq!(i.spot().site(1).residue.label(), "Q[x]/(x^2 + x + 1)");
        assert!(factor_polynomial(&coeffs("5"), ConcreteRing::PolynomialOverRationals, &FactorBounds::default()).is_err());
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!(coeffs("1/2, -3"), vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into())]);
        assert!(parse_coefficients("1,x").is_err());
        assert!(parse_coefficients("1/0").is_err());
        assert!(parse_coefficients(" ").is_err());
    }
}
