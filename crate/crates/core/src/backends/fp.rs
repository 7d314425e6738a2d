//! Univariate polynomials over a prime field `F_p` (p below 2^31) and their
//! factorization: square-free, distinct-degree, then equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients low degree first, always trimmed (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    /// From signed coefficients, highest degree first.
    pub fn from_signed_high_first(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().rev().map(|&c| c.rem_euclid(pi) as u64).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| a * c % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * inv % p;
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * b % p) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| (i as u64 % self.p) * a % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m` for an arbitrary-precision exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// The `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Human-readable form in `x`, highest degree first.
    pub fn render(&self) -> String {
        render_terms(self.coeffs.iter().map(|&c| (c != 0).then(|| c.to_string())).collect())
    }
}

/// Renders low-first coefficients (`None` for zero) as a polynomial in `x`.
pub(crate) fn render_terms(terms: Vec<Option<String>>) -> String {
    let mut out = String::new();
    for (k, c) in terms.into_iter().enumerate().rev() {
        let Some(c) = c else { continue };
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = match k {
            0 => mag,
            1 if mag == "1" => "x".into(),
            1 => format!("{mag}*x"),
            _ if mag == "1" => format!("x^{k}"),
            _ => format!("{mag}*x^{k}"),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Square-free decomposition of a monic polynomial: pairs `(g, k)` with
/// `f = Π g^k` and each `g` square-free.
pub fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root();
        let p = f.p as u32;
        for (g, k) in squarefree(&root.monic()) {
            out.push((g, k * p));
        }
    }
    out
}

/// Distinct-degree split of a monic square-free polynomial: `(g, d)` where
/// `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let pb = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&pb, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest.monic(), deg));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d` into its
/// factors (Cantor-Zassenhaus; trace map in characteristic 2).
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&exp, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let h = f.div_rem(&g).0.monic();
                let mut out = equal_degree(&g, d, rng);
                out.extend(equal_degree(&h, d, rng));
                return out;
            }
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. The input must be nonzero.
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (g, k) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some((_, m)) => *m += k,
                    None => out.push((irr, k)),
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs.iter().rev().collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs.iter().rev().collect::<Vec<_>>()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, high_first: &[i64]) -> FpPoly {
        FpPoly::from_signed_high_first(p, high_first)
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, k)| (0..*k).fold(acc, |a, _| a.mul(g)))
    }

    /// Irreducibility by exhaustive trial division with every monic
    /// polynomial of lower degree.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let n = f.degree().unwrap();
        let p = f.p;
        for d in 1..=n / 2 {
            let total = p.pow(d as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    c.push(x % p);
                    x /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x2_plus_x_over_f2() {
        let f = factor(&poly(2, &[1, 1, 0]));
        assert_eq!(f, vec![(poly(2, &[1, 0]), 1), (poly(2, &[1, 1]), 1)]);
        // Exhaustive root check: both elements of F_2 are roots.
        let g = poly(2, &[1, 1, 0]);
        assert_eq!((g.eval(0), g.eval(1)), (0, 0));
    }

    #[test]
    fn x2_plus_1_over_f2_is_a_square() {
        assert_eq!(factor(&poly(2, &[1, 0, 1])), vec![(poly(2, &[1, 1]), 2)]);
        let sq = poly(2, &[1, 1]).mul(&poly(2, &[1, 1]));
        assert_eq!(sq, poly(2, &[1, 0, 1]));
    }

    #[test]
    fn factors_multiply_back_and_are_irreducible() {
        for p in [2u64, 3, 5, 7] {
            // Every monic polynomial of degree <= 5 (p = 2, 3) or <= 3 (p = 5, 7).
            let max_deg = if p <= 3 { 5 } else { 3 };
            for deg in 1..=max_deg {
                for code in 0..p.pow(deg as u32) {
                    let mut c = Vec::new();
                    let mut x = code;
                    for _ in 0..deg {
                        c.push(x % p);
                        x /= p;
                    }
                    c.push(1);
                    let f = FpPoly::new(p, c);
                    let fs = factor(&f);
                    assert_eq!(product(&fs, p), f, "p={p} f={}", f.render());
                    for (g, _) in &fs {
                        assert!(brute_irreducible(g), "p={p} factor {} of {}", g.render(), f.render());
                    }
                }
            }
        }
    }

    #[test]
    fn pth_powers_are_handled() {
        // (x^2 + 1)^3 * (x + 2) over F_3: derivative of the cube vanishes.
        let g = poly(3, &[1, 0, 1]);
        let f = g.mul(&g).mul(&g).mul(&poly(3, &[1, 2]));
        let fs = factor(&f);
        assert_eq!(fs, vec![(poly(3, &[1, 2]), 1), (g, 3)]);
    }

    #[test]
    fn render_shapes() {
        assert_eq!(poly(5, &[1, 0, 1]).render(), "x^2 + 1");
        assert_eq!(poly(5, &[2, 3, 0]).render(), "2*x^2 + 3*x");
        assert_eq!(FpPoly::zero(5).render(), "0");
    }
}
