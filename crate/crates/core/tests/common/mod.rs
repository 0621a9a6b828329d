#![allow(dead_code)]

pub mod fp;

use std::collections::BTreeMap;
use std::sync::Arc;

use locoh::groebner::{is_groebner_basis, Ideal};
use locoh::polyring::{CoefficientDomain, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

pub type Terms = Vec<(Vec<u32>, i64)>;

pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6), 0..=max_terms)
}

/// At least two terms with nonzero coefficients, so generators are rarely units.
pub fn gen_terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    let coeff = prop_oneof![-6i64..=-1, 1i64..=6];
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), coeff), 2..=max_terms)
}

pub fn build(ring: &Arc<Ring>, t: &Terms) -> Polynomial {
    let d = ring.domain();
    Polynomial::from_terms(ring, t.iter().map(|(e, c)| (Monomial::from_exponents(e), d.from_i64(*c))))
}

pub fn ring(domain: CoefficientDomain) -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], domain).unwrap()
}

pub fn field_domains() -> impl Strategy<Value = CoefficientDomain> {
    prop_oneof![Just(CoefficientDomain::Rational), Just(CoefficientDomain::PrimeField(5))]
}

pub fn nonzero_gens(r: &Arc<Ring>, gens: &[Terms]) -> Vec<Polynomial> {
    gens.iter().map(|t| build(r, t)).filter(|g| !g.is_zero()).collect()
}

pub type GbCase = (CoefficientDomain, Vec<Terms>, Vec<Terms>, Terms, bool);

pub fn gb_cases() -> impl Strategy<Value = GbCase> {
    (
        field_domains(),
        prop::collection::vec(gen_terms(2, 3), 2..=3),
        prop::collection::vec(terms(3, 1, 2), 3),
        terms(3, 2, 3),
        any::<bool>(),
    )
}

/// Buchberger criterion on the output, explicit combinations are members,
/// normal forms are idempotent and decide membership.
pub fn gb_case((d, gens, hs, extra, lex): GbCase) -> Result<(), TestCaseError> {
    let r = ring(d);
    let gs = nonzero_gens(&r, &gens);
    if gs.is_empty() {
        return Ok(());
    }
    let order = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
    let ideal = Ideal::new(&r, gs.clone()).unwrap();
    let gb = ideal.groebner(&order).unwrap();
    prop_assert!(is_groebner_basis(&gb.basis(), &order));

    let combo = gs.iter().zip(&hs).fold(r.zero(), |acc, (g, h)| &acc + &(g * &build(&r, h)));
    prop_assert!(gb.contains(&combo).unwrap());
    prop_assert!(gb.normal_form(&combo).unwrap().is_zero());

    let f = build(&r, &extra);
    let nf = gb.normal_form(&f).unwrap();
    prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
    prop_assert_eq!(nf.is_zero(), gb.contains(&f).unwrap());
    prop_assert!(gb.contains(&(&f - &nf)).unwrap());
    Ok(())
}

// Exact membership oracle for homogeneous data over GF(5): a homogeneous f of
// degree d lies in a homogeneous ideal iff it is in the span of the m*g_i of
// degree d.
pub const P: i64 = 5;

pub fn monomials_of_degree(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

fn vector(f: &Polynomial, d: u32) -> Vec<i64> {
    let index: BTreeMap<Vec<u32>, usize> =
        monomials_of_degree(d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![0; index.len()];
    for (m, c) in f.terms() {
        let exps: Vec<u32> = (0..3).map(|i| m.exponent(i)).collect();
        let s = f.domain().format(c);
        v[index[&exps]] = s.parse::<i64>().unwrap().rem_euclid(P);
    }
    v
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..P).find(|x| x * rows[rank][c] % P == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let k = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] - k * rows[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn oracle_member(f: &Polynomial, gens: &[(Polynomial, u32)], d: u32) -> bool {
    let r = f.ring();
    let mut rows = Vec::new();
    for (g, dg) in gens {
        if *dg > d {
            continue;
        }
        for m in monomials_of_degree(d - dg) {
            rows.push(vector(&(g * &build(r, &vec![(m, 1)])), d));
        }
    }
    let before = rank_mod_p(rows.clone());
    rows.push(vector(f, d));
    rank_mod_p(rows) == before
}

pub fn homogeneous(r: &Arc<Ring>, coeffs: &[i64], d: u32) -> Polynomial {
    let t: Terms = monomials_of_degree(d).into_iter().zip(coeffs).map(|(m, c)| (m, *c)).collect();
    build(r, &t)
}

pub type MembershipCase = (Vec<(u32, Vec<i64>)>, u32, Vec<i64>, Vec<i64>, bool);

pub fn membership_cases() -> impl Strategy<Value = MembershipCase> {
    (
        prop::collection::vec((1u32..=2, prop::collection::vec(-2i64..=2, 6)), 1..=3),
        2u32..=3,
        prop::collection::vec(-2i64..=2, 10),
        prop::collection::vec(-2i64..=2, 6),
        any::<bool>(),
    )
}

pub fn membership_case((gens, fd, fc, hc, positive): MembershipCase) -> Result<(), TestCaseError> {
    let r = ring(CoefficientDomain::PrimeField(P as u32));
    let gs: Vec<(Polynomial, u32)> = gens
        .iter()
        .map(|(d, c)| (homogeneous(&r, c, *d), *d))
        .filter(|(g, _)| !g.is_zero())
        .collect();
    if gs.is_empty() {
        return Ok(());
    }
    let f = match (&gs[0], positive) {
        ((g, dg), true) if *dg <= fd => g * &homogeneous(&r, &hc, fd - dg),
        _ => homogeneous(&r, &fc, fd),
    };
    let ideal = Ideal::new(&r, gs.iter().map(|(g, _)| g.clone()).collect()).unwrap();
    prop_assert_eq!(ideal.contains(&f, None).unwrap(), oracle_member(&f, &gs, fd));
    Ok(())
}

pub type ColonCase = (Vec<Terms>, Terms);

pub fn colon_cases() -> impl Strategy<Value = ColonCase> {
    (prop::collection::vec(gen_terms(2, 3), 1..=3), gen_terms(2, 2))
}

/// `I ⊆ (I : f)` and `f (I : f) ⊆ I`, generator by generator.
pub fn colon_case((gens, f): ColonCase) -> Result<(), TestCaseError> {
    let r = ring(CoefficientDomain::PrimeField(5));
    let gs = nonzero_gens(&r, &gens);
    let f = build(&r, &f);
    if gs.is_empty() || f.is_zero() {
        return Ok(());
    }
    let i = Ideal::new(&r, gs.clone()).unwrap();
    let colon = i.colon(&f, None).unwrap();
    for g in &gs {
        prop_assert!(colon.contains(g, None).unwrap());
    }
    for h in colon.generators() {
        prop_assert!(i.contains(&(h * &f), None).unwrap());
    }
    Ok(())
}
