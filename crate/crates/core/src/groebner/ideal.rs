use std::sync::Arc;

use super::buchberger::{buchberger_in, GbConfig, GbStats, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyring::{
    same_ring, BaseOrder, CoefficientDomain, Monomial, MonomialOrder, Polynomial, Ring,
};

/// Finitely generated ideal of a polynomial ring. Zero generators are
/// dropped, so an empty generator list is the zero ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    config: GbConfig,
    stats: GbStats,
}

/// A polynomial ring modulo relations, with the relation basis cached
/// whenever the coefficients form a field.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: Arc<Ring>,
    relations: Vec<Polynomial>,
    gb: Option<GroebnerBasis>,
}

impl QuotientRing {
    pub fn new(ring: &Arc<Ring>, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if !same_ring(r.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let gb = if ring.domain().is_field() {
            Some(buchberger_in(ring, &relations, &MonomialOrder::GrevLex, &GbConfig::default())?)
        } else {
            None
        };
        Ok(QuotientRing { ring: ring.clone(), relations, gb })
    }

    /// The polynomial ring itself, with no relations.
    pub fn free(ring: &Arc<Ring>) -> Result<Self> {
        Self::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Canonical representative modulo the relations.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        match &self.gb {
            Some(gb) => gb.normal_form(f),
            None => Err(Error::DomainNotSupported {
                op: "quotient normal form",
                domain: self.ring.domain().to_string(),
            }),
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            config: GbConfig::default(),
            stats: GbStats::default(),
        })
    }

    pub fn parse(ring: &Arc<Ring>, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn principal(f: &Polynomial) -> Self {
        Self::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn with_config(mut self, config: GbConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> GbConfig {
        self.config
    }

    pub fn with_stats(mut self, stats: GbStats) -> Self {
        self.stats = stats;
        self
    }

    /// Engine counters accumulated by the computation that produced this ideal.
    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn derived(&self, ring: &Arc<Ring>, generators: Vec<Polynomial>, stats: GbStats) -> Ideal {
        let mut out = Ideal::new(ring, generators).expect("same ring");
        out.config = self.config;
        out.stats = stats;
        out
    }

    fn require_field(&self, op: &'static str) -> Result<()> {
        let d = self.ring.domain();
        if d.is_field() {
            Ok(())
        } else {
            Err(Error::DomainNotSupported { op, domain: d.to_string() })
        }
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        buchberger_in(&self.ring, &self.generators, order, &self.config)
    }

    /// `self + other` (generator concatenation).
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut stats = self.stats;
        stats.merge(&other.stats);
        Ok(self.derived(&self.ring, gens, stats))
    }

    fn with_relations(&self, rel: Option<&QuotientRing>) -> Result<Ideal> {
        match rel {
            None => Ok(self.clone()),
            Some(q) => {
                if !same_ring(q.ring(), &self.ring) {
                    return Err(Error::RingMismatch);
                }
                let mut gens = self.generators.clone();
                gens.extend(q.relations().iter().cloned());
                Ok(self.derived(&self.ring, gens, self.stats))
            }
        }
    }

    /// Reduced GrevLex basis of `self + relations`.
    pub fn groebner_mod(&self, rel: Option<&QuotientRing>) -> Result<GroebnerBasis> {
        self.require_field("ideal membership")?;
        self.with_relations(rel)?.groebner(&MonomialOrder::GrevLex)
    }

    /// `f ∈ self` (modulo `rel` when given), decided by normal form.
    pub fn contains(&self, f: &Polynomial, rel: Option<&QuotientRing>) -> Result<bool> {
        self.check(f)?;
        self.groebner_mod(rel)?.contains(f)
    }

    /// `(self + rel) : f`, computed as `((self + rel) ∩ (f)) / f`.
    pub fn colon(&self, f: &Polynomial, rel: Option<&QuotientRing>) -> Result<Ideal> {
        self.check(f)?;
        self.require_field("colon")?;
        if f.is_zero() {
            return Err(Error::ZeroColon);
        }
        let full = self.with_relations(rel)?;
        let meet = full.intersect(&Ideal::principal(f))?;
        let mut quotients = Vec::with_capacity(meet.generators.len());
        for g in &meet.generators {
            let q = divide_exact(g, f)?
                .ok_or_else(|| Error::InvalidArgument(format!("{f} does not divide {g}")))?;
            quotients.push(q);
        }
        let out = self.derived(&self.ring, quotients, meet.stats);
        let gb = out.groebner(&MonomialOrder::GrevLex)?;
        let mut stats = out.stats;
        stats.merge(gb.stats());
        Ok(self.derived(&self.ring, gb.basis(), stats))
    }

    /// `self ∩ K[remaining variables]`, returned in the subring on the
    /// variables that are not dropped.
    pub fn eliminate<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal> {
        self.require_field("elimination")?;
        let front = drop
            .iter()
            .map(|v| self.ring.var_index(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let order = MonomialOrder::elimination(self.ring.nvars(), &front, BaseOrder::GrevLex);
        let gb = self.groebner(&order)?;
        let keep: Vec<&String> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| !front.contains(i))
            .map(|(_, v)| v)
            .collect();
        let sub = self.ring.subring(&keep)?;
        let gens = gb
            .basis()
            .into_iter()
            .filter(|g| g.support_vars().iter().all(|i| !front.contains(i)))
            .map(|g| g.change_ring(&sub))
            .collect::<Result<Vec<_>>>()?;
        let mut stats = self.stats;
        stats.merge(gb.stats());
        Ok(self.derived(&sub, gens, stats))
    }

    /// `self ∩ other` via a fresh variable `T`: eliminate `T` from
    /// `T*self + (1 - T)*other`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        self.require_field("intersection")?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.derived(&self.ring, Vec::new(), self.stats));
        }
        let name = self.ring.fresh_name("T");
        let big = self.ring.with_extra_var(&name)?;
        let t = big.var(&name)?;
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&g.change_ring(&big)? * &t);
        }
        for h in &other.generators {
            gens.push(&h.change_ring(&big)? * &one_minus_t);
        }
        let lifted = self.derived(&big, gens, self.stats);
        let contracted = lifted.eliminate(&[name.as_str()])?;
        let gens = contracted
            .generators
            .iter()
            .map(|g| g.change_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(&self.ring, gens, contracted.stats))
    }

    /// Bracket power `(g_1^q, ..., g_r^q)`. Over 𝔽_p, `q` must be a power of p.
    pub fn frobenius_power(&self, q: u32) -> Result<Ideal> {
        if q < 1 {
            return Err(Error::InvalidExponent(format!("Frobenius power needs q >= 1, got {q}")));
        }
        if let CoefficientDomain::PrimeField(p) = self.ring.domain() {
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            if r != 1 {
                return Err(Error::InvalidExponent(format!("{q} is not a power of the characteristic {p}")));
            }
        }
        let gens = self.generators.iter().map(|g| g.pow(q)).collect();
        Ok(self.derived(&self.ring, gens, self.stats))
    }

    /// Equality of ideals (modulo `rel`), comparing reduced GrevLex bases.
    pub fn equals(&self, other: &Ideal, rel: Option<&QuotientRing>) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let a = self.groebner_mod(rel)?;
        let b = other.groebner_mod(rel)?;
        Ok(a.basis() == b.basis())
    }
}

/// Exact quotient `f / d` over a field, or `None` when `d` does not divide `f`.
pub fn divide_exact(f: &Polynomial, d: &Polynomial) -> Result<Option<Polynomial>> {
    if !same_ring(f.ring(), d.ring()) {
        return Err(Error::RingMismatch);
    }
    if d.is_zero() {
        return Err(Error::InvalidArgument("division by zero polynomial".into()));
    }
    let order = MonomialOrder::GrevLex;
    let dom = f.domain();
    let (dm, dc) = d.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let inv = dom.inv(&dc).ok_or(Error::DomainNotSupported {
        op: "exact division",
        domain: dom.to_string(),
    })?;
    let mut rest = f.clone();
    let mut quotient = Polynomial::zero(f.ring());
    while let Some((m, c)) = rest.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) {
        let Some(q) = m.div(&dm) else {
            return Ok(None);
        };
        let coef = dom.mul(&c, &inv);
        rest = &rest - &d.mul_term(&q, &coef);
        quotient = &quotient + &Polynomial::monomial(f.ring(), q, coef);
    }
    Ok(Some(quotient))
}

/// Membership of `f` in `i`, modulo `rel` when given.
pub fn membership(f: &Polynomial, i: &Ideal, rel: Option<&QuotientRing>) -> Result<bool> {
    i.contains(f, rel)
}

fn monomial_generators(gens: &[Polynomial]) -> Result<Vec<Monomial>> {
    gens.iter()
        .map(|g| match g.as_term() {
            Some((m, c)) if g.domain().is_one(c) => Ok(m.clone()),
            _ => Err(Error::NonMonomialGenerator(g.to_string())),
        })
        .collect()
}

/// The part of `f mod p` that no monomial generator divides. It is zero
/// exactly when `f ∈ (p, m_1, ..., m_r)`.
pub fn residual_mod_p_monomials(f: &Polynomial, p: u64, monomials: &[Polynomial]) -> Result<Polynomial> {
    let mons = monomial_generators(monomials)?;
    let reduced = f.reduce_mod_p(p)?;
    let kept = reduced
        .terms()
        .filter(|(t, _)| !mons.iter().any(|m| m.divides(t)))
        .map(|(t, c)| (t.clone(), c.clone()));
    Ok(Polynomial::from_terms(reduced.ring(), kept))
}

/// `f ∈ (p, m_1, ..., m_r)` over ℤ for monic monomials `m_i`.
pub fn membership_monomial_plus_p(f: &Polynomial, p: u64, monomials: &[Polynomial]) -> Result<bool> {
    Ok(residual_mod_p_monomials(f, p, monomials)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars, CoefficientDomain::Rational).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f2 = Ring::new(&["x", "y"], CoefficientDomain::PrimeField(2)).unwrap();
        let i = Ideal::parse(&f2, &["x^2", "y^2"]).unwrap();
        assert!(!i.contains(&f2.parse("x*y").unwrap(), None).unwrap());
        assert!(i.contains(&f2.parse("x^2").unwrap(), None).unwrap());

        let h = qq(&["w", "x", "y", "z"]);
        let rel = QuotientRing::new(&h, vec![h.parse("w*x - y*z").unwrap()]).unwrap();
        let i = Ideal::parse(&h, &["x^3", "y^3"]).unwrap();
        assert!(i.contains(&h.parse("y^3*z^2").unwrap(), Some(&rel)).unwrap());
    }

    #[test]
    fn monomial_plus_p() {
        let z = Ring::new(&["x", "y"], CoefficientDomain::Integer).unwrap();
        let mons = [z.parse("x^2").unwrap(), z.parse("y^2").unwrap()];
        let f = z.parse("x^2 + y^2 - (x + y)^2").unwrap().divide_exact_by_integer(2).unwrap();
        assert!(!membership_monomial_plus_p(&f, 2, &mons).unwrap());
        assert!(membership_monomial_plus_p(&z.parse("x^2").unwrap(), 5, &mons).unwrap());
        let x5 = [z.parse("x^5").unwrap()];
        assert!(membership_monomial_plus_p(&z.parse("3*x").unwrap(), 3, &x5).unwrap());
        let bad = [z.parse("x + y").unwrap()];
        assert!(matches!(
            membership_monomial_plus_p(&f, 2, &bad),
            Err(Error::NonMonomialGenerator(_))
        ));
    }

    #[test]
    fn colon_examples() {
        let r = qq(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let c = i.colon(&r.parse("x*y").unwrap(), None).unwrap();
        assert!(c.equals(&Ideal::parse(&r, &["x", "y"]).unwrap(), None).unwrap());
        assert!(i.colon(&r.one(), None).unwrap().equals(&i, None).unwrap());
        let c = i.colon(&r.parse("x").unwrap(), None).unwrap();
        assert!(c.equals(&Ideal::parse(&r, &["x", "y^2"]).unwrap(), None).unwrap());
        assert!(matches!(i.colon(&r.zero(), None), Err(Error::ZeroColon)));
    }

    #[test]
    fn elimination_examples() {
        let r = qq(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x - y", "y - z^2"]).unwrap();
        let e = i.eliminate(&["y"]).unwrap();
        assert_eq!(e.ring().vars(), &["x".to_string(), "z".to_string()]);
        let expected = Ideal::parse(e.ring(), &["x - z^2"]).unwrap();
        assert!(e.equals(&expected, None).unwrap());

        let same = i.eliminate::<&str>(&[]).unwrap();
        assert!(same.equals(&i, None).unwrap());

        let r = qq(&["t", "x"]);
        let i = Ideal::parse(&r, &["t*x", "t - 1"]).unwrap();
        let e = i.eliminate(&["t"]).unwrap();
        assert!(e.equals(&Ideal::parse(e.ring(), &["x"]).unwrap(), None).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = qq(&["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(x.intersect(&y).unwrap().equals(&xy, None).unwrap());
        assert!(x.intersect(&x).unwrap().equals(&x, None).unwrap());
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(m.intersect(&x2).unwrap().equals(&x2, None).unwrap());
    }

    #[test]
    fn frobenius_examples() {
        let r = qq(&["x", "y"]);
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let sq = m.frobenius_power(2).unwrap();
        assert_eq!(sq.generators(), Ideal::parse(&r, &["x^2", "y^2"]).unwrap().generators());
        assert_eq!(m.frobenius_power(1).unwrap().generators(), m.generators());
        assert!(matches!(m.frobenius_power(0), Err(Error::InvalidExponent(_))));

        let f3 = Ring::new(&["x", "y"], CoefficientDomain::PrimeField(3)).unwrap();
        let i = Ideal::parse(&f3, &["x + y"]).unwrap();
        assert_eq!(i.frobenius_power(3).unwrap().generators(), &[f3.parse("x^3 + y^3").unwrap()]);
        assert!(i.frobenius_power(2).is_err());
    }

    #[test]
    fn ideal_equality() {
        let r = qq(&["x", "y"]);
        let a = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert!(a.equals(&Ideal::parse(&r, &["x + y", "y"]).unwrap(), None).unwrap());
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert!(!x.equals(&Ideal::parse(&r, &["x^2"]).unwrap(), None).unwrap());
    }

    #[test]
    fn exact_division() {
        let r = qq(&["x", "y"]);
        let f = r.parse("x^3 - y^3").unwrap();
        let d = r.parse("x - y").unwrap();
        assert_eq!(divide_exact(&f, &d).unwrap().unwrap(), r.parse("x^2 + x*y + y^2").unwrap());
        assert!(divide_exact(&r.parse("x^2 + 1").unwrap(), &d).unwrap().is_none());
    }
}
