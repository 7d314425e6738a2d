//! Univariate polynomials over `Q` and their factorization for small degree:
//! square-free decomposition, rational roots, and a quadratic-pair search
//! for quartics.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, FactorBounds};
use crate::error::{Error, Result};

use super::fp::render_terms;

/// Coefficients low degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut f = QPoly { coeffs };
        while f.coeffs.last().is_some_and(Zero::is_zero) {
            f.coeffs.pop();
        }
        f
    }

    pub fn from_high_first(coeffs: &[BigRational]) -> Self {
        QPoly::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn from_i64_high_first(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().rev().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn one() -> Self {
        QPoly::new(vec![q(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        QPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::new(vec![]);
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (QPoly::new(vec![]), self.clone());
        }
        let lead = d.lead();
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &lead;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            quo[k] = c;
        }
        (QPoly::new(quo), QPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn render(&self) -> String {
        render_terms(
            self.coeffs
                .iter()
                .map(|c| (!c.is_zero()).then(|| c.to_string()))
                .collect(),
        )
    }
}

/// Yun's square-free decomposition of a monic polynomial.
pub fn squarefree(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Primitive integer polynomial with the same roots (positive leading coefficient).
fn integer_primitive(f: &QPoly) -> Vec<BigInt> {
    let den = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn abs_divisors(n: &BigInt, bounds: &FactorBounds) -> Result<Vec<BigInt>> {
    let m: BigUint = n.abs().to_biguint().unwrap();
    Ok(divisors(&m, bounds)?
        .into_iter()
        .map(|d| BigInt::from_biguint(Sign::Plus, d))
        .collect())
}

/// All rational roots of a square-free polynomial (rational root theorem).
fn rational_roots(f: &QPoly, bounds: &FactorBounds) -> Result<Vec<BigRational>> {
    let ints = integer_primitive(f);
    let mut roots = Vec::new();
    let mut lo = 0;
    while ints[lo].is_zero() {
        roots.push(BigRational::zero());
        lo += 1;
    }
    if lo + 1 == ints.len() {
        return Ok(roots);
    }
    let nums = abs_divisors(&ints[lo], bounds)?;
    let dens = abs_divisors(ints.last().unwrap(), bounds)?;
    let mut cands: Vec<BigRational> = Vec::new();
    for a in &nums {
        for b in &dens {
            if a.gcd(b).is_one() {
                let r = BigRational::new(a.clone(), b.clone());
                cands.push(-r.clone());
                cands.push(r);
            }
        }
    }
    for r in cands {
        if f.eval(&r).is_zero() {
            roots.push(r);
        }
    }
    Ok(roots)
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits a monic rational quartic without rational roots into two monic
/// quadratics, or returns `None` when it is irreducible.
fn quartic_split(f: &QPoly, bounds: &FactorBounds) -> Result<Option<(QPoly, QPoly)>> {
    // Scale x = y / L to get a monic integer quartic g(y) = L^4 f(y / L).
    let l = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lq = BigRational::from_integer(l.clone());
    let g: Vec<BigInt> = (0..=4)
        .map(|k| (&f.coeffs[k] * lq.pow(4 - k as i32)).to_integer())
        .collect();
    // g = (y^2 + b y + c)(y^2 + d y + e)
    let (g0, g1, g2, g3) = (&g[0], &g[1], &g[2], &g[3]);
    for cpos in abs_divisors(g0, bounds)? {
        for c in [cpos.clone(), -cpos] {
            let e = g0 / &c;
            let (b, d);
            if c != e {
                // b + d = g3 and b e + c d = g1 determine b and d.
                let num = g1 - &c * g3;
                let den = &e - &c;
                if !(&num % &den).is_zero() {
                    continue;
                }
                b = num / den;
                d = g3 - &b;
            } else {
                if *g1 != &c * g3 {
                    continue;
                }
                // b + d = g3, b d = g2 - 2c.
                let disc = g3 * g3 - BigInt::from(4) * (g2 - BigInt::from(2) * &c);
                let Some(s) = isqrt_exact(&disc) else { continue };
                if !(g3 + &s).is_even() {
                    continue;
                }
                b = (g3 + &s) / 2;
                d = g3 - &b;
            }
            if &b * &d + &c + &e != *g2 {
                continue;
            }
            // Back to x: y^2 + b y + c over L^2 becomes x^2 + (b/L) x + c/L^2.
            let unscale = |b: &BigInt, c: &BigInt| {
                QPoly::new(vec![
                    BigRational::new(c.clone(), &l * &l),
                    BigRational::new(b.clone(), l.clone()),
                    q(1),
                ])
            };
            return Ok(Some((unscale(&b, &c), unscale(&d, &e))));
        }
    }
    Ok(None)
}

/// Monic irreducible factors over `Q` with multiplicities, sorted by degree
/// then coefficients. Supports square-free parts whose non-linear remainder
/// has degree at most 4.
pub fn factor(f: &QPoly, bounds: &FactorBounds) -> Result<Vec<(QPoly, u32)>> {
    let mut out: Vec<(QPoly, u32)> = Vec::new();
    for (g, k) in squarefree(&f.monic()) {
        let mut rest = g.clone();
        for r in rational_roots(&g, bounds)? {
            let lin = QPoly::new(vec![-r, q(1)]);
            rest = rest.div_rem(&lin).0;
            out.push((lin, k));
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            2 | 3 => out.push((rest.monic(), k)),
            4 => match quartic_split(&rest.monic(), bounds)? {
                Some((a, b)) => {
                    out.push((a, k));
                    out.push((b, k));
                }
                None => out.push((rest.monic(), k)),
            },
            d => {
                return Err(Error::Factorization(format!(
                    "factor of degree {d} without rational roots is beyond the supported degree 4"
                )))
            }
        }
    }
    out.sort_by_cached_key(|(p, _)| (p.degree(), p.render()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_i64_high_first(c)
    }

    fn product(fs: &[(QPoly, u32)]) -> QPoly {
        fs.iter()
            .fold(QPoly::one(), |acc, (g, k)| (0..*k).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn x3_minus_1() {
        let fs = factor(&poly(&[1, 0, 0, -1]), &FactorBounds::default()).unwrap();
        assert_eq!(fs, vec![(poly(&[1, -1]), 1), (poly(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn repeated_and_rational_roots() {
        // 4 (x - 1/2)^2 (x + 3) = (2x - 1)^2 (x + 3)
        let f = poly(&[2, -1]).mul(&poly(&[2, -1])).mul(&poly(&[1, 3]));
        let fs = factor(&f, &FactorBounds::default()).unwrap();
        assert_eq!(product(&fs), f.monic());
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(QPoly::new(vec![BigRational::new((-1).into(), 2.into()), q(1)]), 2)));
        assert!(fs.contains(&(poly(&[1, 3]), 1)));
    }

    #[test]
    fn quartic_pairs() {
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let fs = factor(&poly(&[1, 0, 0, 0, 4]), &FactorBounds::default()).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), poly(&[1, 0, 0, 0, 4]));
        // x^4 + 2x^2 + 9 = (x^2 + 2x + 3)(x^2 - 2x + 3): equal constants.
        let fs = factor(&poly(&[1, 0, 2, 0, 9]), &FactorBounds::default()).unwrap();
        assert_eq!(fs.len(), 2);
        // x^4 + 1 is irreducible over Q.
        let fs = factor(&poly(&[1, 0, 0, 0, 1]), &FactorBounds::default()).unwrap();
        assert_eq!(fs, vec![(poly(&[1, 0, 0, 0, 1]), 1)]);
        // Non-integral scaling: x^4 + 1/4 = (x^2 + x + 1/2)(x^2 - x + 1/2).
        let f = QPoly::new(vec![BigRational::new(1.into(), 4.into()), q(0), q(0), q(0), q(1)]);
        let fs = factor(&f, &FactorBounds::default()).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn products_of_small_factors_round_trip() {
        let pieces = [poly(&[1, 1]), poly(&[1, -2]), poly(&[1, 0, 1]), poly(&[3, 1]), poly(&[1, 0, -2])];
        for i in 0..pieces.len() {
            for j in i..pieces.len() {
                let f = pieces[i].mul(&pieces[j]).mul(&pieces[0]);
                let fs = factor(&f, &FactorBounds::default()).unwrap();
                assert_eq!(product(&fs), f.monic(), "{}", f.render());
                for (g, _) in &fs {
                    if g.degree() == Some(2) {
                        assert!(rational_roots(g, &FactorBounds::default()).unwrap().is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn high_degree_without_roots_is_refused() {
        assert!(factor(&poly(&[1, 0, 0, 0, 0, 2]), &FactorBounds::default()).is_err());
    }
}
