use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::terms::{self, Reducer, Term};
use crate::error::{Error, Result};
use crate::polyring::{same_ring, CoefficientDomain, Monomial, MonomialOrder, Polynomial, Ring};

/// Hard limits that abort a runaway computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbConfig {
    pub max_basis: usize,
    pub max_degree: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_basis: 5000, max_degree: 120 }
    }
}

/// Counters collected during one or more Buchberger runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub runs: u32,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub pairs_pruned: u64,
    pub max_degree: u64,
    pub max_basis: usize,
}

impl GbStats {
    pub fn merge(&mut self, other: &GbStats) {
        self.runs += other.runs;
        self.pairs_reduced += other.pairs_reduced;
        self.zero_reductions += other.zero_reductions;
        self.pairs_pruned += other.pairs_pruned;
        self.max_degree = self.max_degree.max(other.max_degree);
        self.max_basis = self.max_basis.max(other.max_basis);
    }
}

/// Reduced, monic Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    reducers: Vec<Reducer>,
    stats: GbStats,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    domain: CoefficientDomain,
    config: &'a GbConfig,
    elems: Vec<Reducer>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl Engine<'_> {
    fn active_reducers(&self) -> Vec<&Reducer> {
        let mut v: Vec<&Reducer> = self
            .elems
            .iter()
            .zip(&self.active)
            .filter_map(|(r, &a)| a.then_some(r))
            .collect();
        v.sort_by(|a, b| self.order.cmp(&a.lead, &b.lead));
        v
    }

    fn reduce(&self, p: Vec<Term>) -> Vec<Term> {
        terms::reduce(p, &self.active_reducers(), self.order, self.domain)
    }

    fn guard(&mut self, h: &[Term]) -> Result<()> {
        let deg = h.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        self.stats.max_degree = self.stats.max_degree.max(deg);
        if deg > self.config.max_degree {
            return Err(Error::GuardExceeded(format!(
                "basis element of degree {deg} exceeds cap {} after {} pairs",
                self.config.max_degree, self.stats.pairs_reduced
            )));
        }
        if self.elems.len() >= self.config.max_basis {
            return Err(Error::GuardExceeded(format!(
                "basis grew past {} elements (max degree {})",
                self.config.max_basis, self.stats.max_degree
            )));
        }
        Ok(())
    }

    /// Gebauer–Möller update for a new element `h` of sugar degree `sugar`.
    fn insert(&mut self, h: Vec<Term>, sugar: u64) -> Result<()> {
        self.guard(&h)?;
        let h = Reducer::new(h);
        let hi = self.elems.len();
        let hl = h.lead.clone();

        let cands: Vec<(usize, Monomial, bool)> = (0..self.elems.len())
            .filter(|&g| self.active[g])
            .map(|g| {
                let gl = &self.elems[g].lead;
                (g, gl.lcm(&hl), gl.is_coprime(&hl))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for (idx, (_, lcm, coprime)) in cands.iter().enumerate() {
            let dominated = !coprime
                && (cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(lcm))
                    || kept.iter().any(|&k| cands[k].1.divides(lcm)));
            if !dominated {
                kept.push(idx);
            } else {
                self.stats.pairs_pruned += 1;
            }
        }

        let before = self.pairs.len();
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm)
                && self.elems[p.i].lead.lcm(&hl) != p.lcm
                && self.elems[p.j].lead.lcm(&hl) != p.lcm)
        });
        self.stats.pairs_pruned += (before - self.pairs.len()) as u64;

        for idx in kept {
            let (g, ref lcm, coprime) = cands[idx];
            if coprime {
                self.stats.pairs_pruned += 1;
                continue;
            }
            let d = lcm.degree();
            let s = (self.sugar[g] + d - self.elems[g].lead.degree()).max(sugar + d - hl.degree());
            self.pairs.push(Pair { i: g, j: hi, sugar: s, lcm: lcm.clone() });
        }

        for g in 0..self.elems.len() {
            if self.active[g] && hl.divides(&self.elems[g].lead) {
                self.active[g] = false;
            }
        }
        self.elems.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let live = self.active.iter().filter(|&&a| a).count();
        self.stats.max_basis = self.stats.max_basis.max(live);
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                self.order.cmp(&a.lcm, &b.lcm)
                    .then_with(|| a.sugar.cmp(&b.sugar))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (f, g) = (&self.elems[p.i], &self.elems[p.j]);
        let qf = p.lcm.div(&f.lead).unwrap();
        let qg = p.lcm.div(&g.lead).unwrap();
        let one = self.domain.one();
        let left: Vec<Term> = f.tail().iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
        terms::sub_mul(left, &one, &qg, g.tail(), self.order, self.domain)
    }
}

/// Buchberger's algorithm with the normal selection strategy (ties broken by
/// sugar), Gebauer–Möller pair pruning and a final interreduction.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, config: &GbConfig) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::InvalidArgument("buchberger needs a ring; use GroebnerBasis::zero".into())),
    };
    buchberger_in(&ring, gens, order, config)
}

pub(crate) fn buchberger_in(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: &MonomialOrder,
    config: &GbConfig,
) -> Result<GroebnerBasis> {
    let domain = ring.domain();
    if !domain.is_field() {
        return Err(Error::DomainNotSupported { op: "Gröbner basis", domain: domain.to_string() });
    }
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let mut inputs: Vec<Vec<Term>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| terms::make_monic(terms::from_poly(g, order), domain))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0).then(a.len().cmp(&b.len())));

    let mut eng = Engine {
        order,
        domain,
        config,
        elems: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats { runs: 1, ..GbStats::default() },
    };
    for f in inputs {
        let sugar = f.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let h = eng.reduce(f);
        if !h.is_empty() {
            eng.insert(terms::make_monic(h, domain), sugar)?;
        }
    }
    while let Some(pair) = eng.next_pair() {
        eng.stats.pairs_reduced += 1;
        let s = eng.spoly(&pair);
        let h = eng.reduce(s);
        if h.is_empty() {
            eng.stats.zero_reductions += 1;
        } else {
            eng.insert(terms::make_monic(h, domain), pair.sugar)?;
        }
    }

    // interreduce the minimal basis
    let minimal: Vec<Reducer> = eng
        .elems
        .iter()
        .zip(&eng.active)
        .filter_map(|(r, &a)| a.then(|| r.clone()))
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, r) in minimal.iter().enumerate() {
        let others: Vec<&Reducer> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, o)| o).collect();
        let lead = r.terms.last().unwrap().clone();
        let tail = terms::reduce(r.tail().to_vec(), &others, order, domain);
        let mut t = tail;
        t.push(lead);
        reduced.push(Reducer::new(t));
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    Ok(GroebnerBasis { ring: ring.clone(), order: order.clone(), reducers: reduced, stats: eng.stats })
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn zero(ring: &Arc<Ring>, order: &MonomialOrder) -> Self {
        GroebnerBasis { ring: ring.clone(), order: order.clone(), reducers: Vec::new(), stats: GbStats::default() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.reducers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducers.is_empty()
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        self.reducers.iter().map(|r| terms::to_poly(&self.ring, &r.terms)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reducers.iter().map(|r| r.lead.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.reducers.iter().any(|r| r.lead.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let refs: Vec<&Reducer> = self.reducers.iter().collect();
        let r = terms::reduce(terms::from_poly(f, &self.order), &refs, &self.order, self.ring.domain());
        Ok(terms::to_poly(&self.ring, &r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Remainder of `f` under the division algorithm by `divisors` (in the given
/// order, not necessarily a Gröbner basis). Works on plain polynomials and
/// shares no code with the Buchberger loop, so tests use it as a check.
pub fn divide_remainder(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let d = f.domain();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut divided = false;
        for g in divisors.iter().filter(|g| !g.is_zero()) {
            let (gm, gc) = g.leading_term(order).unwrap();
            if let (Some(q), Some(inv)) = (m.div(gm), d.inv(gc)) {
                let factor = d.mul(&c, &inv);
                p = &p - &g.mul_term(&q, &factor);
                divided = true;
                break;
            }
        }
        if !divided {
            let lt = Polynomial::monomial(f.ring(), m, c);
            rem = &rem + &lt;
            p = &p - &lt;
        }
    }
    rem
}

/// S-polynomial of two polynomials with invertible leading coefficients.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let d = f.domain();
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), &d.inv(fc).unwrap());
    let b = g.mul_term(&l.div(gm).unwrap(), &d.inv(gc).unwrap());
    &a - &b
}

/// Buchberger's criterion, checked naively over every pair.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let nz: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let owned: Vec<Polynomial> = nz.iter().map(|g| (*g).clone()).collect();
    for i in 0..nz.len() {
        for j in i + 1..nz.len() {
            let s = s_polynomial(nz[i], nz[j], order);
            if !divide_remainder(&s, &owned, order).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::CoefficientDomain;

    fn ring(vars: &[&str], d: CoefficientDomain) -> Arc<Ring> {
        Ring::new(vars, d).unwrap()
    }

    #[test]
    fn linear_system_over_q() {
        let r = ring(&["x", "y"], CoefficientDomain::Rational);
        let gens = [r.parse("x + y").unwrap(), r.parse("x - y").unwrap()];
        let gb = buchberger(&gens, &MonomialOrder::Lex, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis(), vec![r.parse("y").unwrap(), r.parse("x").unwrap()]);
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = ring(&["u", "v", "w", "x", "y", "z"], CoefficientDomain::Rational);
        let f = r.parse("u*x + v*y + w*z").unwrap();
        let gb = buchberger(&[f.clone()], &MonomialOrder::GrevLex, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis(), vec![f]);
    }

    #[test]
    fn buchberger_criterion_over_f5() {
        let r = ring(&["x", "y"], CoefficientDomain::PrimeField(5));
        let gens = [r.parse("x^2 - y").unwrap(), r.parse("y^2 - x").unwrap()];
        let gb = buchberger(&gens, &MonomialOrder::Lex, &GbConfig::default()).unwrap();
        assert!(is_groebner_basis(&gb.basis(), &MonomialOrder::Lex));
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn integers_rejected() {
        let r = ring(&["x"], CoefficientDomain::Integer);
        let err = buchberger(&[r.parse("2*x").unwrap()], &MonomialOrder::GrevLex, &GbConfig::default());
        assert!(matches!(err, Err(Error::DomainNotSupported { .. })));
    }

    #[test]
    fn degree_guard_aborts() {
        let r = ring(&["x", "y", "z"], CoefficientDomain::PrimeField(7));
        let gens = [r.parse("x^3 - y*z").unwrap(), r.parse("y^3 - x*z").unwrap(), r.parse("z^3 - x*y").unwrap()];
        let tight = GbConfig { max_basis: 2, max_degree: 120 };
        assert!(matches!(buchberger(&gens, &MonomialOrder::Lex, &tight), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let r = ring(&["x", "y", "z"], CoefficientDomain::Rational);
        let gens = [r.parse("x*y - z").unwrap(), r.parse("y^2 - x").unwrap()];
        let gb = buchberger(&gens, &MonomialOrder::GrevLex, &GbConfig::default()).unwrap();
        let f = r.parse("x^3*y + y^5 - 3*z*x").unwrap();
        let nf = gb.normal_form(&f).unwrap();
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
    }
}
