//! Dense univariate polynomials over 𝔽_p and their factorization:
//! squarefree decomposition, distinct-degree splitting and Cantor–Zassenhaus
//! equal-degree splitting driven by a fixed-seed generator.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{pow_mod, Coeff, CoefficientDomain, Monomial, Polynomial, Ring};

const SPLIT_SEED: u64 = 0x51_4e_47_48;

/// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, c: coeffs.into_iter().map(|x| x % p).collect() };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports 0 as well, check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|a| a * (k % self.p) % self.p).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.lc()))
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = self.inv(d.lc());
        let dl = d.c.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = r[k + dl - 1] * inv % p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * b % p) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| (i as u64 % self.p) * a % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// For `f(x) = g(x^p)`, returns `g` (coefficients of 𝔽_p are fixed by Frobenius).
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        FpPoly::new(self.p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, a| (acc * x + a) % self.p)
    }

    pub fn from_polynomial(f: &Polynomial) -> Result<FpPoly> {
        let p = match f.domain() {
            CoefficientDomain::PrimeField(p) => p as u64,
            d => return Err(Error::DomainNotSupported { op: "univariate 𝔽_p factorization", domain: d.to_string() }),
        };
        let vars = f.support_vars();
        if vars.len() > 1 {
            return Err(Error::InvalidArgument(format!("{f} is not univariate")));
        }
        let mut c = vec![0u64; f.total_degree().unwrap_or(0) as usize + 1];
        for (m, k) in f.terms() {
            let Coeff::Mod(k) = k else { unreachable!() };
            c[m.degree() as usize] = *k as u64;
        }
        Ok(FpPoly::new(p, c))
    }

    /// Converts back into `ring`, using the variable at index `var`.
    pub fn to_polynomial(&self, ring: &Arc<Ring>, var: usize) -> Polynomial {
        let d = ring.domain();
        let terms = self.c.iter().enumerate().filter(|(_, a)| **a != 0).map(|(i, a)| {
            let mut m = Monomial::one(ring.nvars());
            m.set_exponent(var, i as u32);
            (m, d.from_i64(*a as i64))
        });
        Polynomial::from_terms(ring, terms.collect::<Vec<_>>())
    }

    /// `x^(p^k) mod self`.
    fn frobenius_x(&self, k: u32) -> FpPoly {
        let mut h = FpPoly::x(self.p).rem(self);
        let pe = BigUint::from(self.p);
        for _ in 0..k {
            h = h.pow_mod(&pe, self);
        }
        h
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        if self.is_zero() || self.degree() == 0 {
            return false;
        }
        let n = self.degree() as u32;
        let f = self.monic();
        let x = FpPoly::x(self.p);
        if !f.frobenius_x(n).sub(&x).rem(&f).is_zero() {
            return false;
        }
        prime_divisors(n).into_iter().all(|r| {
            let h = f.frobenius_x(n / r).sub(&x);
            f.gcd(&h).is_one()
        })
    }
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with the
/// `g` squarefree, pairwise coprime and `f = Π g^e`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, e) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree() > 0 {
            out.push((fac.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree() > 0 {
        for (g, e) in squarefree_decomposition(&c.monic().pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let pe = BigUint::from(p);
    let mut d = 1u32;
    while rest.degree() >= 2 * d as usize {
        h = h.pow_mod(&pe, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree() as u32;
        out.push((rest, deg));
    }
    out
}

fn random_below(rng: &mut ChaCha8Rng, f: &FpPoly) -> FpPoly {
    let c = (0..f.degree()).map(|_| rng.next_u64() % f.p).collect();
    FpPoly::new(f.p, c)
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &FpPoly, d: u32, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    if f.degree() as u32 == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = random_below(rng, f);
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let two = BigUint::from(2u32);
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.pow_mod(&two, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading coefficient is returned
/// separately.
pub fn factor(f: &FpPoly) -> Result<(u64, Vec<(FpPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let lc = f.lc();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (sq, e) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&sq) {
            for g in equal_degree(&block, d, &mut rng) {
                match out.iter_mut().find(|(h, _)| *h == g) {
                    Some((_, m)) => *m += e,
                    None => out.push((g, e)),
                }
            }
        }
    }
    out.sort();
    Ok((lc, out))
}

/// `factor_univariate_fp`: factor a univariate polynomial of a ring over 𝔽_p.
pub fn factor_univariate_fp(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let var = f.support_vars().first().copied().unwrap_or(0);
    let (_, facs) = factor(&FpPoly::from_polynomial(f)?)?;
    Ok(facs.into_iter().map(|(g, e)| (g.to_polynomial(f.ring(), var), e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(p: u64, facs: &[(FpPoly, u32)]) -> FpPoly {
        facs.iter().fold(FpPoly::one(p), |acc, (g, e)| (0..*e).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn examples_from_the_census() {
        // t^3 - 2t over F_5 = t * (t^2 + 3)
        let (_, f) = factor(&fp(5, &[0, 3, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(5, &[0, 1]), 1), (fp(5, &[3, 0, 1]), 1)]);
        // t^2 - 2 over F_7 = (t - 3)(t + 3)
        let (_, f) = factor(&fp(7, &[5, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(7, &[3, 1]), 1), (fp(7, &[4, 1]), 1)]);
        let (_, f) = factor(&fp(11, &[0, 1])).unwrap();
        assert_eq!(f, vec![(fp(11, &[0, 1]), 1)]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        // (t + 1)^2 * t^3 over F_3 has a p-th power part
        let g = fp(3, &[1, 1]);
        let t = fp(3, &[0, 1]);
        let f = g.mul(&g).mul(&t).mul(&t).mul(&t);
        let (lc, facs) = factor(&f).unwrap();
        assert_eq!(lc, 1);
        assert_eq!(facs, vec![(t, 3), (g, 2)]);
    }

    #[test]
    fn characteristic_two_splitting() {
        // x^4 + x = x (x + 1)(x^2 + x + 1) over F_2
        let f = fp(2, &[0, 1, 0, 0, 1]);
        let (_, facs) = factor(&f).unwrap();
        assert_eq!(product(2, &facs), f);
        assert_eq!(facs.len(), 3);
        assert!(facs.iter().all(|(g, _)| g.is_irreducible()));
    }

    #[test]
    fn rabin_test() {
        assert!(fp(5, &[3, 0, 1]).is_irreducible());
        assert!(!fp(5, &[4, 0, 1]).is_irreducible());
        assert!(fp(2, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!fp(2, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor(&FpPoly::zero(5)).is_err());
    }
}
