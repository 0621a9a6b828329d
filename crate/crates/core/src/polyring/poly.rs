use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::domain::{Coeff, CoefficientDomain};
use super::grading::{Multigrading, WeightedDegree};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Variable names plus coefficient domain. Shared behind an `Arc` by every
/// polynomial of the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    domain: CoefficientDomain,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], domain: CoefficientDomain) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, domain }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn with_domain(&self, domain: CoefficientDomain) -> Arc<Ring> {
        Arc::new(Ring { vars: self.vars.clone(), domain })
    }

    /// Same ring with one more variable appended (last in declaration order).
    pub fn with_extra_var(&self, name: &str) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Ring::new(&vars, self.domain)
    }

    /// Polynomial subring on `keep`, listed in this ring's declaration order.
    pub fn subring<S: AsRef<str>>(&self, keep: &[S]) -> Result<Arc<Ring>> {
        for k in keep {
            self.var_index(k.as_ref())?;
        }
        let vars: Vec<&String> = self
            .vars
            .iter()
            .filter(|v| keep.iter().any(|k| k.as_ref() == v.as_str()))
            .collect();
        Ring::new(&vars, self.domain)
    }

    /// A variable name not used by this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut i = 0;
        while self.vars.contains(&name) {
            i += 1;
            name = format!("{stem}{i}");
        }
        name
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial> {
        let i = self.var_index(name)?;
        Ok(Polynomial::monomial(self, Monomial::var(self.nvars(), i), self.domain.one()))
    }

    pub fn vars_as_polys(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| Polynomial::monomial(self, Monomial::var(self.nvars(), i), self.domain.one()))
            .collect()
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, self.domain.one())
    }

    pub fn int(self: &Arc<Self>, v: i64) -> Polynomial {
        Polynomial::constant(self, self.domain.from_i64(v))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.domain, self.vars.join(","))
    }
}

/// Sparse polynomial: a map from monomial to nonzero coefficient.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        if !ring.domain.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length disagrees with ring");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        let d = self.ring.domain;
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = d.add(old, &c);
                if d.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                if !d.is_zero(&c) {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.ring.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.domain.zero())
    }

    /// Single term `c*m` when the polynomial has exactly one term.
    pub fn as_term(&self) -> Option<(&Monomial, &Coeff)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Indices of variables that occur with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let d = self.ring.domain;
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = d.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(old) => *old = d.add(old, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !d.is_zero(c));
        Ok(Polynomial { ring: self.ring.clone(), terms: acc })
    }

    fn neg_ref(&self) -> Polynomial {
        let d = self.ring.domain;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), d.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let d = self.ring.domain;
        if d.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let v = d.mul(a, c);
            if !d.is_zero(&v) {
                terms.insert(m.clone(), v);
            }
        }
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let d = self.ring.domain;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            let v = d.mul(x, c);
            if !d.is_zero(&v) {
                terms.insert(a.mul(m), v);
            }
        }
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Weighted degree under `grading`: the common degree when homogeneous,
    /// [`WeightedDegree::Any`] for zero.
    pub fn multidegree(&self, grading: &Multigrading) -> Result<WeightedDegree> {
        grading.check_vars(self.ring.nvars())?;
        let mut common: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let deg = grading.degree_of(m);
            match &common {
                None => common = Some(deg),
                Some(c) if *c == deg => {}
                Some(_) => return Ok(WeightedDegree::Inhomogeneous),
            }
        }
        Ok(match common {
            None => WeightedDegree::Any,
            Some(c) => WeightedDegree::Exactly(c),
        })
    }

    /// Exact division of an integer polynomial by the positive integer `p`.
    pub fn divide_exact_by_integer(&self, p: u64) -> Result<Polynomial> {
        if self.ring.domain != CoefficientDomain::Integer {
            return Err(Error::DomainNotSupported {
                op: "divide_exact_by_integer",
                domain: self.ring.domain.to_string(),
            });
        }
        if p == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let divisor = BigInt::from(p);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let Coeff::Int(v) = c else { unreachable!() };
            if !(v % &divisor).is_zero() {
                let mono = Polynomial::monomial(&self.ring, m.clone(), self.ring.domain.one());
                return Err(Error::NonDivisible { monomial: mono.to_string(), divisor: p });
            }
            terms.insert(m.clone(), Coeff::Int(v / &divisor));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Coefficient-wise reduction of an integer (or rational) polynomial
    /// into 𝔽_p, in the same variables.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Polynomial> {
        let target = self.ring.with_domain(CoefficientDomain::prime_field(p)?);
        self.change_ring(&target)
    }

    /// Maps this polynomial into `target`, matching variables by name and
    /// converting coefficients. Fails when a used variable is missing from
    /// `target` or a coefficient has no image in the target domain.
    pub fn change_ring(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let n = target.nvars();
        let mut map = Vec::with_capacity(self.ring.nvars());
        let used = self.support_vars();
        for (i, name) in self.ring.vars.iter().enumerate() {
            match target.var_index(name) {
                Ok(j) => map.push(Some(j)),
                Err(e) if used.contains(&i) => return Err(e),
                Err(_) => map.push(None),
            }
        }
        let td = target.domain;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(n);
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e.set_exponent(map[i].unwrap(), x);
                }
            }
            let c = td.convert(c).ok_or_else(|| Error::DomainNotSupported {
                op: "coefficient conversion",
                domain: format!("{} -> {}", self.ring.domain, td),
            })?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Simultaneous substitution of variables by polynomials of the same ring.
    pub fn substitute<S: AsRef<str>>(&self, assignment: &[(S, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Option<&Polynomial>> = vec![None; self.ring.nvars()];
        for (name, value) in assignment {
            let i = self.ring.var_index(name.as_ref())?;
            self.check_ring(value)?;
            images[i] = Some(value);
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.nvars()];
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(self.ring.nvars());
            let mut factor = Polynomial::constant(&self.ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match images[i] {
                    None => kept.set_exponent(i, e),
                    Some(img) => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(self.ring.one());
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * img;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                }
            }
            out = &out + &factor.mul_term(&kept, &self.ring.domain.one());
        }
        Ok(out)
    }

    /// Float evaluation at a point; only for ℤ and ℚ coefficients.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument("point has wrong dimension".into()));
        }
        let d = self.ring.domain;
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = d.to_f64(c).ok_or(Error::DomainNotSupported {
                op: "float evaluation",
                domain: d.to_string(),
            })?;
            for (x, &e) in point.iter().zip(m.exponents()) {
                t *= x.powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Divides every coefficient by the leading coefficient (fields only).
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.domain.inv(c).expect("monic needs an invertible leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// True when every term is divisible by `m`.
    pub fn divisible_by_monomial(&self, m: &Monomial) -> bool {
        self.terms.keys().all(|t| m.divides(t))
    }

    /// Exact quotient by a monomial, if it divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.div(m)?, c.clone());
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Content check over ℤ: every coefficient divisible by `p`.
    pub fn all_coefficients_divisible(&self, p: u64) -> bool {
        let divisor = BigInt::from(p);
        self.terms.values().all(|c| match c {
            Coeff::Int(v) => (v % &divisor).is_zero(),
            Coeff::Rat(v) => v.is_integer() && (v.to_integer() % &divisor).is_zero(),
            Coeff::Mod(v) => *v as u64 % p == 0,
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let d = self.ring.domain;
        let order = MonomialOrder::GrevLex;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = d.is_negative(c);
            let abs = if neg { d.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.ring, m);
            match (d.is_one(&abs), mono.is_empty()) {
                (_, true) => write!(f, "{}", d.format(&abs))?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", d.format(&abs))?,
            }
        }
        Ok(())
    }
}

fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in ring.vars.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoefficientDomain::Rational).unwrap()
    }

    fn zz(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoefficientDomain::Integer).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = qq(&["x", "y"]);
        let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
        assert_eq!(&(&x + &y) + &(&x - &y), r.parse("2*x").unwrap());
        assert_eq!(&(&x + &y) * &(&x - &y), r.parse("x^2 - y^2").unwrap());

        let f3 = Ring::new(&["x", "y"], CoefficientDomain::PrimeField(3)).unwrap();
        let s = &f3.var("x").unwrap() + &f3.var("y").unwrap();
        assert_eq!(s.pow(3), f3.parse("x^3 + y^3").unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = qq(&["x"]);
        let b = qq(&["y"]);
        assert!(matches!(
            a.var("x").unwrap().try_add(&b.var("y").unwrap()),
            Err(Error::RingMismatch)
        ));
    }

    #[test]
    fn exact_integer_division() {
        let r = zz(&["x", "y"]);
        let f = r.parse("(x^2 + y^2) - (x + y)^2").unwrap();
        assert_eq!(f.divide_exact_by_integer(2).unwrap(), r.parse("-x*y").unwrap());
        assert!(r.zero().divide_exact_by_integer(7).unwrap().is_zero());
        match r.parse("x").unwrap().divide_exact_by_integer(2) {
            Err(Error::NonDivisible { monomial, divisor }) => {
                assert_eq!(monomial, "x");
                assert_eq!(divisor, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduction_mod_p() {
        let r = zz(&["x", "y"]);
        let f2 = r.with_domain(CoefficientDomain::PrimeField(2));
        assert_eq!(r.parse("2*x + 3*y").unwrap().reduce_mod_p(2).unwrap(), f2.parse("y").unwrap());
        assert_eq!(r.parse("-x*y").unwrap().reduce_mod_p(2).unwrap(), f2.parse("x*y").unwrap());
        let g = r.parse("x^3 + y^3 - (x + y)^3").unwrap().divide_exact_by_integer(3).unwrap();
        let f3 = r.with_domain(CoefficientDomain::PrimeField(3));
        assert_eq!(g.reduce_mod_p(3).unwrap(), f3.parse("2*x^2*y + 2*x*y^2").unwrap());
        assert!(matches!(g.reduce_mod_p(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn substitution() {
        let r = zz(&["u", "v", "w", "x", "y", "z"]);
        let f = r.parse("u*x + v*y + w*z").unwrap();
        let one = r.one();
        let g = f
            .substitute(&[("u", one.clone()), ("v", one.clone()), ("w", one)])
            .unwrap();
        assert_eq!(g, r.parse("x + y + z").unwrap());
        assert_eq!(f.substitute::<&str>(&[]).unwrap(), f);
        assert!(matches!(
            f.substitute(&[("q", r.one())]),
            Err(Error::UnknownVariable(_))
        ));

        let st = qq(&["s", "t"]);
        let q2 = st.parse("t^2 - s^2").unwrap();
        assert_eq!(q2.substitute(&[("s", st.one())]).unwrap(), st.parse("t^2 - 1").unwrap());
    }

    #[test]
    fn change_ring_by_name() {
        let big = qq(&["a", "b", "c"]);
        let small = big.subring(&["c", "a"]).unwrap();
        assert_eq!(small.vars(), &["a".to_string(), "c".to_string()]);
        let f = big.parse("a*c + 2").unwrap();
        assert_eq!(f.change_ring(&small).unwrap().to_string(), "a*c + 2");
        assert!(big.parse("b").unwrap().change_ring(&small).is_err());
    }
}
