//! Order-sorted term vectors used inside the Buchberger loop.
//!
//! Terms are kept in ascending order so the leading term is `last()` and
//! can be popped in O(1).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::polyring::{Coeff, CoefficientDomain, Monomial, MonomialOrder, Polynomial, Ring};

pub(crate) type Term = (Monomial, Coeff);

pub(crate) fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Vec<Term> {
    let mut v: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&a.0, &b.0));
    v
}

pub(crate) fn to_poly(ring: &Arc<Ring>, terms: &[Term]) -> Polynomial {
    let map: BTreeMap<Monomial, Coeff> = terms.iter().cloned().collect();
    Polynomial::from_terms(ring, map)
}

/// Bitmask of variables with positive exponent; a cheap divisibility filter.
pub(crate) fn divmask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1 << (i % 64)) } else { acc })
}

/// `a - c * q * b`, all ascending; returns an ascending vector without zeros.
pub(crate) fn sub_mul(
    a: Vec<Term>,
    c: &Coeff,
    q: &Monomial,
    b: &[Term],
    order: &MonomialOrder,
    d: CoefficientDomain,
) -> Vec<Term> {
    let negc = d.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.iter().map(|(m, x)| (m.mul(q), d.mul(x, &negc))).peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (m, x) = ia.next().unwrap();
                let (_, y) = ib.next().unwrap();
                let s = d.add(&x, &y);
                if !d.is_zero(&s) {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

/// A reducer: a monic polynomial with its leading monomial and mask cached.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    pub terms: Vec<Term>,
    pub lead: Monomial,
    pub mask: u64,
}

impl Reducer {
    pub fn new(terms: Vec<Term>) -> Self {
        let lead = terms.last().expect("nonzero reducer").0.clone();
        let mask = divmask(&lead);
        Reducer { terms, lead, mask }
    }

    pub fn tail(&self) -> &[Term] {
        &self.terms[..self.terms.len() - 1]
    }
}

pub(crate) fn make_monic(mut t: Vec<Term>, d: CoefficientDomain) -> Vec<Term> {
    if let Some((_, lc)) = t.last() {
        if !d.is_one(lc) {
            let inv = d.inv(lc).expect("field coefficient");
            for (_, c) in t.iter_mut() {
                *c = d.mul(c, &inv);
            }
        }
    }
    t
}

/// Full reduction of `p` modulo monic reducers. `skip` excludes one index
/// (used for interreduction).
pub(crate) fn reduce(
    mut p: Vec<Term>,
    reducers: &[&Reducer],
    order: &MonomialOrder,
    d: CoefficientDomain,
) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, _)) = p.last() {
        let mask = divmask(m);
        let hit = reducers
            .iter()
            .find(|r| r.mask & !mask == 0 && r.lead.divides(m));
        match hit {
            Some(r) => {
                let (m, c) = p.pop().unwrap();
                let q = m.div(&r.lead).unwrap();
                p = sub_mul(p, &c, &q, r.tail(), order, d);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    rem
}
