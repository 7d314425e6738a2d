//! Exact integer helpers: gcd/lcm folds, valuations, primality and
//! factorization of desk-scale integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Limits for integer factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBounds {
    /// Trial division runs over all candidates up to this value.
    pub trial_limit: u64,
    /// Iteration cap for each Pollard rho attempt.
    pub rho_iterations: u64,
}

impl Default for FactorBounds {
    fn default() -> Self {
        FactorBounds {
            trial_limit: 1_000_000,
            rho_iterations: 2_000_000,
        }
    }
}

pub const TRIAL_LIMIT_ENV: &str = "REESNORM_TRIAL_LIMIT";
pub const RHO_ITERATIONS_ENV: &str = "REESNORM_RHO_ITERATIONS";

impl FactorBounds {
    /// Defaults overridden by `REESNORM_TRIAL_LIMIT` / `REESNORM_RHO_ITERATIONS`.
    pub fn from_env() -> Result<Self> {
        let mut b = FactorBounds::default();
        if let Ok(v) = std::env::var(TRIAL_LIMIT_ENV) {
            b.trial_limit = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{TRIAL_LIMIT_ENV}={v:?} is not an integer")))?;
        }
        if let Ok(v) = std::env::var(RHO_ITERATIONS_ENV) {
            b.rho_iterations = v.trim().parse().map_err(|_| {
                Error::Parse(format!("{RHO_ITERATIONS_ENV}={v:?} is not an integer"))
            })?;
        }
        Ok(b)
    }
}

/// Largest value for which Miller-Rabin with the first thirteen prime bases
/// is a proof of primality (3.317e24).
fn deterministic_mr_limit() -> BigUint {
    "3317044064679887385961981".parse().unwrap()
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    xs.into_iter().fold(BigUint::zero(), |acc, x| acc.gcd(x))
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    xs.into_iter().fold(BigUint::one(), |acc, x| acc.lcm(x))
}

pub fn product<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    xs.into_iter().fold(BigUint::one(), |acc, x| acc * x)
}

/// `base^exp` for an arbitrary-precision exponent.
pub fn pow_big(base: &BigUint, exp: &BigUint) -> BigUint {
    if base.is_zero() {
        return if exp.is_zero() { BigUint::one() } else { BigUint::zero() };
    }
    if base.is_one() {
        return BigUint::one();
    }
    let e = exp
        .to_u32()
        .expect("exponent too large to materialize the power");
    base.pow(e)
}

/// Splits `n = p^k * rest` with `p ∤ rest`; returns `(k, rest)`.
pub fn split_valuation(n: &BigUint, p: &BigUint) -> (u32, BigUint) {
    assert!(!n.is_zero() && *p > BigUint::one());
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (k, rest);
        }
        rest = q;
        k += 1;
    }
}

fn miller_rabin(n: &BigUint, base: u32) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality with a proof-level guarantee. Fails for values beyond the
/// range where the fixed-base Miller-Rabin test is deterministic.
pub fn is_prime(n: &BigUint) -> Result<bool> {
    if *n < BigUint::from(2u8) {
        return Ok(false);
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return Ok(true);
        }
        if (n % &p).is_zero() {
            return Ok(false);
        }
    }
    if *n >= deterministic_mr_limit() {
        return Err(Error::Factorization(format!(
            "{n} exceeds the range of deterministic primality testing"
        )));
    }
    Ok(MR_BASES.iter().all(|&b| miller_rabin(n, b)))
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor of the odd
/// composite `n`, or `None` when every attempt hits the iteration cap.
fn pollard_rho(n: &BigUint, max_iter: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..=20 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u8);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        const BATCH: u64 = 64;
        while g.is_one() && iters < max_iter {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
                iters += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time from the last saved point.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
/// `n` must be at least 1; `1` factors as the empty list.
pub fn factorize(n: &BigUint, bounds: &FactorBounds) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::Factorization("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, k: u32, out: &mut Vec<(BigUint, u32)>| {
        if k > 0 {
            out.push((p, k));
        }
    };
    let mut cand: u64 = 2;
    while cand <= bounds.trial_limit {
        let p = BigUint::from(cand);
        if &p * &p > rest {
            break;
        }
        if (&rest % &p).is_zero() {
            let (k, r) = split_valuation(&rest, &p);
            rest = r;
            push(p, k, &mut out);
        }
        cand += if cand == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let mut pending = vec![rest];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m)? {
            large.push(m);
            continue;
        }
        let d = pollard_rho(&m, bounds.rho_iterations).ok_or_else(|| {
            Error::Factorization(format!(
                "no factor of {m} found within {} rho iterations",
                bounds.rho_iterations
            ))
        })?;
        pending.push(&m / &d);
        pending.push(d);
    }
    large.sort();
    for p in large {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Ascending distinct primes dividing any of the given positive integers.
pub fn distinct_primes<'a>(
    xs: impl IntoIterator<Item = &'a BigUint>,
    bounds: &FactorBounds,
) -> Result<Vec<BigUint>> {
    let mut primes = Vec::new();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        for (p, _) in factorize(x, bounds)? {
            primes.push(p);
        }
    }
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// All positive divisors, ascending.
pub fn divisors(n: &BigUint, bounds: &FactorBounds) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, k) in factorize(n, bounds)? {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..k {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn brute_factor(mut n: u64) -> Vec<(BigUint, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while n > 1 {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            if k > 0 {
                out.push((b(p), k));
            }
            p += 1;
        }
        out
    }

    #[test]
    fn small_factorizations_match_brute_force() {
        let bounds = FactorBounds::default();
        for n in 1..2000u64 {
            assert_eq!(factorize(&b(n), &bounds).unwrap(), brute_factor(n), "n = {n}");
        }
    }

    #[test]
    fn rho_splits_semiprime_past_trial_bound() {
        let bounds = FactorBounds {
            trial_limit: 100,
            rho_iterations: 1_000_000,
        };
        let p = b(1_000_003);
        let q = b(998_244_353);
        let f = factorize(&(&p * &q * &p), &bounds).unwrap();
        assert_eq!(f, vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime(&b(n as u64)).unwrap(), expect, "n = {n}");
        }
    }

    #[test]
    fn primality_refuses_huge_inputs() {
        // 2^89 - 1 is prime and has no small factor to short-circuit on.
        let big = (BigUint::one() << 89u32) - BigUint::one();
        assert!(big > deterministic_mr_limit());
        assert!(is_prime(&big).is_err());
    }

    #[test]
    fn divisors_of_72() {
        let d: Vec<u64> = divisors(&b(72), &FactorBounds::default())
            .unwrap()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]);
    }

    #[test]
    fn gcd_lcm_folds() {
        let xs = [b(4), b(6)];
        assert_eq!(gcd_all(&xs), b(2));
        assert_eq!(lcm_all(&xs), b(12));
        assert_eq!(product(&xs), b(24));
        assert_eq!(split_valuation(&b(48), &b(2)), (4, b(3)));
    }
}
