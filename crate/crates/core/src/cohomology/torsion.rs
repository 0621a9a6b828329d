//! p-torsion in `H^3_{(x,y,z)}` of `ℤ[u,v,w,x,y,z]/(ux+vy+wz)`: the class
//! `η_p = [λ_p + (x^p, y^p, z^p)]`, a cofactor proof that `p η_p = 0`, and a
//! five-step weight reduction showing `η_p ≠ 0`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{lambda_q, verify_zero_at, CechClass, Presentation, VanishingVerdict};
use crate::error::{Error, Result};
use crate::groebner::{residual_mod_p_monomials, QuotientRing};
use crate::polyring::{is_prime, CoefficientDomain, Multigrading, MonomialOrder, Polynomial, Ring, WeightedDegree};

const VARS: [&str; 6] = ["u", "v", "w", "x", "y", "z"];
const RELATION: &str = "u*x + v*y + w*z";
/// `(x_i, companion u_i, the other two sequence variables)`.
const TRIPLES: [(&str, &str, &str, &str); 3] = [("x", "u", "y", "z"), ("y", "v", "z", "x"), ("z", "w", "x", "y")];

pub fn torsion_ring(domain: CoefficientDomain) -> Result<QuotientRing> {
    Presentation {
        vars: VARS.iter().map(|v| v.to_string()).collect(),
        domain,
        relations: vec![RELATION.to_string()],
    }
    .build()
}

/// x, y, z carry the unit vectors; u, v, w carry `e_4` minus their partner's.
pub fn weight_table() -> Multigrading {
    Multigrading::new(vec![
        vec![-1, 0, 0, 1],
        vec![0, -1, 0, 1],
        vec![0, 0, -1, 1],
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
    ])
    .expect("rank 4 table")
}

fn zz_ring() -> Result<Arc<Ring>> {
    Ring::new(&VARS, CoefficientDomain::Integer)
}

fn xy_ring() -> Result<Arc<Ring>> {
    Ring::new(&["x", "y"], CoefficientDomain::Integer)
}

/// `η_p` over ℤ, with `λ_p` built from the pairs `(u,x), (v,y), (w,z)`.
pub fn eta_class(p: u64) -> Result<CechClass> {
    let q = torsion_ring(CoefficientDomain::Integer)?;
    let r = q.ring();
    let f: Vec<Polynomial> = ["u", "v", "w"].iter().map(|v| r.var(v)).collect::<Result<_>>()?;
    let g: Vec<Polynomial> = ["x", "y", "z"].iter().map(|v| r.var(v)).collect::<Result<_>>()?;
    let lambda = lambda_q(&f, &g, p, 1, Some(&q.relations()[0]))?;
    let m = u32::try_from(p).map_err(|_| Error::InvalidArgument(format!("prime {p} too large")))?;
    CechClass::new(&q, g, m, lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineFailure {
    pub stage: String,
    pub reason: String,
}

impl fmt::Display for PipelineFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.reason)
    }
}

impl From<PipelineFailure> for Error {
    fn from(f: PipelineFailure) -> Self {
        Error::CertificateFailed { stage: f.stage, reason: f.reason }
    }
}

fn fail<T>(stage: &str, reason: impl Into<String>) -> std::result::Result<T, PipelineFailure> {
    Err(PipelineFailure { stage: stage.to_string(), reason: reason.into() })
}

/// Runs `body`, turning engine errors into a failure at `stage`.
fn at<T>(stage: &str, r: Result<T>) -> std::result::Result<T, PipelineFailure> {
    r.or_else(|e| fail(stage, e.to_string()))
}

const S1: &str = "step 1 (weight homogeneity)";
const S2: &str = "step 2 (degree forcing)";
const S3: &str = "step 3 (reduction)";
const S4: &str = "step 4 (specialization)";
const S5: &str = "step 5 (final non-membership)";
const ANN: &str = "annihilation";
const CLASS: &str = "class";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step1 {
    pub lambda: String,
    pub multidegree: Vec<i64>,
    pub expected: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSolution {
    pub k: u32,
    pub generator: String,
    pub target: Vec<i64>,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step2 {
    pub k_max: u32,
    pub solutions: Vec<DegreeSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdentity {
    pub k: u32,
    pub generator: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step3 {
    pub reduced_ideal: Vec<String>,
    pub identities: Vec<MonomialIdentity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step4 {
    pub specialization: Vec<(String, String)>,
    pub specialized: String,
    pub closed_form: String,
    pub specialized_ideal: Vec<String>,
    pub binomial_defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step5 {
    pub ideal: Vec<String>,
    pub residual: String,
    pub witness: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingCertificate {
    pub p: u64,
    pub step1: Step1,
    pub step2: Step2,
    pub step3: Step3,
    pub step4: Step4,
    pub step5: Step5,
}

impl NonvanishingCertificate {
    pub fn verdict(&self) -> VanishingVerdict {
        VanishingVerdict::NonzeroCertified { certificate: format!("weight reduction: {}", self.step5.statement) }
    }
}

fn expected_degree(p: u64) -> Vec<i64> {
    vec![0, 0, 0, p as i64]
}

/// `deg(c_i)` forced by `λ (xyz)^k = Σ c_i x_i^{p+k}`.
fn cofactor_target(p: u64, k: u32, gen_index: usize) -> Vec<i64> {
    let mut t = expected_degree(p);
    for (j, e) in t.iter_mut().take(3).enumerate() {
        *e += k as i64;
        if j == gen_index {
            *e -= p as i64 + k as i64;
        }
    }
    t
}

fn cofactor_monomial(r: &Arc<Ring>, p: u64, k: u32, gen_index: usize) -> Result<Polynomial> {
    let (_, u, a, b) = TRIPLES[gen_index];
    r.parse(&format!("{u}^{p}*{a}^{k}*{b}^{k}"))
}

fn reduced_generators(r: &Arc<Ring>, p: u64) -> Result<Vec<Polynomial>> {
    TRIPLES.iter().map(|(x, u, _, _)| r.parse(&format!("{u}^{p}*{x}^{p}"))).collect()
}

fn step1(lambda: &Polynomial, p: u64) -> std::result::Result<Step1, PipelineFailure> {
    let deg = at(S1, lambda.multidegree(&weight_table()))?;
    let expected = expected_degree(p);
    match deg {
        WeightedDegree::Exactly(d) if d == expected => {
            Ok(Step1 { lambda: lambda.to_string(), multidegree: d, expected })
        }
        WeightedDegree::Exactly(d) => fail(S1, format!("degree {d:?} differs from {expected:?}")),
        other => fail(S1, format!("lambda is not homogeneous ({other:?})")),
    }
}

fn check_step1(s: &Step1, p: u64) -> std::result::Result<Polynomial, PipelineFailure> {
    let r = at(S1, zz_ring())?;
    let lambda = at(S1, r.parse(&s.lambda))?;
    if s.expected != expected_degree(p) {
        return fail(S1, "recorded target degree is not (0,0,0,p)");
    }
    let again = step1(&lambda, p)?;
    if again.multidegree != s.multidegree {
        return fail(S1, "recorded multidegree does not match");
    }
    Ok(lambda)
}

fn step2(p: u64, k_max: u32) -> std::result::Result<Step2, PipelineFailure> {
    let r = at(S2, zz_ring())?;
    let table = weight_table();
    let mut solutions = Vec::new();
    for k in 0..=k_max {
        for (i, (x, ..)) in TRIPLES.iter().enumerate() {
            let target = cofactor_target(p, k, i);
            let sols = table
                .monomials_of_degree(&target)
                .ok_or_else(|| PipelineFailure { stage: S2.into(), reason: "no bounding functional".into() })?;
            let expected = at(S2, cofactor_monomial(&r, p, k, i))?;
            let [only] = sols.as_slice() else {
                return fail(S2, format!("degree {target:?} has {} monomial solutions", sols.len()));
            };
            let found = Polynomial::monomial(&r, only.clone(), r.domain().one());
            if found != expected {
                return fail(S2, format!("degree {target:?} is solved by {found}, not {expected}"));
            }
            solutions.push(DegreeSolution { k, generator: x.to_string(), target, monomial: found.to_string() });
        }
    }
    Ok(Step2 { k_max, solutions })
}

fn check_step2(s: &Step2, p: u64) -> std::result::Result<(), PipelineFailure> {
    if step2(p, s.k_max)? != *s {
        return fail(S2, "recorded degree solutions do not match");
    }
    Ok(())
}

fn step3(p: u64, k_max: u32) -> std::result::Result<Step3, PipelineFailure> {
    let r = at(S3, zz_ring())?;
    let gens = at(S3, reduced_generators(&r, p))?;
    let xyz = at(S3, r.parse("x*y*z"))?;
    let mut identities = Vec::new();
    for k in 0..=k_max {
        for (i, (x, ..)) in TRIPLES.iter().enumerate() {
            let lhs = &xyz.pow(k) * &gens[i];
            let xi = at(S3, r.var(x))?;
            let rhs = &at(S3, cofactor_monomial(&r, p, k, i))? * &xi.pow(p as u32 + k);
            if lhs != rhs {
                return fail(S3, format!("(xyz)^{k}*{} != {rhs}", gens[i]));
            }
            identities.push(MonomialIdentity { k, generator: x.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }
    Ok(Step3 { reduced_ideal: gens.iter().map(|g| g.to_string()).collect(), identities })
}

fn check_step3(s: &Step3, p: u64, k_max: u32) -> std::result::Result<(), PipelineFailure> {
    let r = at(S3, zz_ring())?;
    for id in &s.identities {
        let (l, rr) = (at(S3, r.parse(&id.lhs))?, at(S3, r.parse(&id.rhs))?);
        if l != rr {
            return fail(S3, format!("identity at k={} for {} does not hold", id.k, id.generator));
        }
    }
    if step3(p, k_max)? != *s {
        return fail(S3, "recorded identities do not match");
    }
    Ok(())
}

fn specialize(lambda: &Polynomial, xy: &Arc<Ring>) -> Result<Polynomial> {
    let r = lambda.ring();
    let assignment = [("u", r.one()), ("v", r.one()), ("w", r.one()), ("z", r.parse("-x - y")?)];
    lambda.substitute(&assignment)?.change_ring(xy)
}

fn step4(lambda: &Polynomial, p: u64) -> std::result::Result<Step4, PipelineFailure> {
    let xy = at(S4, xy_ring())?;
    let specialized = at(S4, specialize(lambda, &xy))?;
    let e = p as u32;
    let x = at(S4, xy.var("x"))?;
    let y = at(S4, xy.var("y"))?;
    let sum = &x + &y;
    let sign = if p % 2 == 0 { xy.one() } else { -xy.one() };
    let closed = at(S4, (&(&x.pow(e) + &y.pow(e)) + &(&sign * &sum.pow(e))).divide_exact_by_integer(p))?;
    if closed != specialized {
        return fail(S4, format!("specialization {specialized} differs from closed form {closed}"));
    }
    let defect = &(&sum.pow(e) - &x.pow(e)) - &y.pow(e);
    if !defect.all_coefficients_divisible(p) {
        return fail(S4, format!("{defect} is not divisible by {p}"));
    }
    let zz = at(S4, zz_ring())?;
    let gens = at(S4, reduced_generators(&zz, p))?;
    let sideal = gens.iter().map(|g| specialize(g, &xy)).collect::<Result<Vec<_>>>();
    let sideal = at(S4, sideal)?;
    let mons = [x.pow(e), y.pow(e)];
    for g in &sideal {
        if !at(S4, residual_mod_p_monomials(g, p, &mons))?.is_zero() {
            return fail(S4, format!("{g} is not in (p, x^{p}, y^{p})"));
        }
    }
    Ok(Step4 {
        specialization: vec![
            ("u".into(), "1".into()),
            ("v".into(), "1".into()),
            ("w".into(), "1".into()),
            ("z".into(), "-x - y".into()),
        ],
        specialized: specialized.to_string(),
        closed_form: closed.to_string(),
        specialized_ideal: sideal.iter().map(|g| g.to_string()).collect(),
        binomial_defect: defect.to_string(),
    })
}

fn check_step4(s: &Step4, lambda: &Polynomial, p: u64) -> std::result::Result<Polynomial, PipelineFailure> {
    let fresh = step4(lambda, p)?;
    if fresh != *s {
        return fail(S4, "recorded specialization does not match");
    }
    let xy = at(S4, xy_ring())?;
    at(S4, xy.parse(&s.specialized))
}

fn step5(specialized: &Polynomial, p: u64) -> std::result::Result<Step5, PipelineFailure> {
    let xy = specialized.ring();
    let e = p as u32;
    let mons = [at(S5, xy.var("x"))?.pow(e), at(S5, xy.var("y"))?.pow(e)];
    let residual = at(S5, residual_mod_p_monomials(specialized, p, &mons))?;
    let Some((lead, _)) = residual.leading_term(&MonomialOrder::GrevLex) else {
        return fail(S5, format!("{specialized} lies in (p, x^{p}, y^{p})"));
    };
    let witness = Polynomial::monomial(residual.ring(), lead.clone(), residual.domain().one());
    let ideal: Vec<String> = mons.iter().map(|m| m.to_string()).collect();
    Ok(Step5 {
        statement: format!("{residual} ∉ ({}) mod {p}", ideal.join(", ")),
        ideal,
        residual: residual.to_string(),
        witness: witness.to_string(),
    })
}

fn check_step5(s: &Step5, specialized: &Polynomial, p: u64) -> std::result::Result<(), PipelineFailure> {
    if step5(specialized, p)? != *s {
        return fail(S5, "recorded residual does not match");
    }
    Ok(())
}

/// The five-step nonvanishing argument applied to a candidate `λ`, which
/// lives in `ℤ[u,v,w,x,y,z]`. Degree forcing is checked for every `k ≤ k_max`.
pub fn weight_pipeline(lambda: &Polynomial, p: u64, k_max: u32) -> std::result::Result<NonvanishingCertificate, PipelineFailure> {
    if !is_prime(p) {
        return fail(S1, format!("{p} is not a prime"));
    }
    let zz = at(S1, zz_ring())?;
    let lambda = at(S1, lambda.change_ring(&zz))?;
    let step1 = step1(&lambda, p)?;
    let step2 = step2(p, k_max)?;
    let step3 = step3(p, k_max)?;
    let step4 = step4(&lambda, p)?;
    let xy = at(S4, xy_ring())?;
    let specialized = at(S4, xy.parse(&step4.specialized))?;
    let step5 = step5(&specialized, p)?;
    Ok(NonvanishingCertificate { p, step1, step2, step3, step4, step5 })
}

/// Re-checks every recorded step of a nonvanishing certificate.
pub fn verify_weight_pipeline(c: &NonvanishingCertificate) -> std::result::Result<(), PipelineFailure> {
    if !is_prime(c.p) {
        return fail(S1, format!("{} is not a prime", c.p));
    }
    let lambda = check_step1(&c.step1, c.p)?;
    check_step2(&c.step2, c.p)?;
    check_step3(&c.step3, c.p, c.step2.k_max)?;
    let specialized = check_step4(&c.step4, &lambda, c.p)?;
    check_step5(&c.step5, &specialized, c.p)
}

pub fn weight_reduction_nonvanishing(p: u64, k_max: u32) -> std::result::Result<NonvanishingCertificate, PipelineFailure> {
    let class = at(CLASS, eta_class(p))?;
    weight_pipeline(&class.numerator, p, k_max)
}

/// `p λ (xyz)^k = Σ c_i x_i^{p+k} + c_rel · rel` over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationCertificate {
    pub k: u32,
    pub multiplier: u64,
    pub cofactors: Vec<String>,
    pub relation_cofactor: String,
    /// The same membership decided by a Gröbner basis over ℚ.
    pub rational_membership: bool,
}

impl AnnihilationCertificate {
    pub fn verdict(&self) -> VanishingVerdict {
        VanishingVerdict::ZeroAt { k: self.k }
    }
}

fn annihilation(class: &CechClass, p: u64) -> Result<AnnihilationCertificate> {
    let r = class.base_ring();
    let rel = &class.ring.relations()[0];
    let cofactors: Vec<String> = ["u", "v", "w"].iter().map(|u| format!("{u}^{p}")).collect();
    let relation_cofactor = -&rel.pow(p as u32 - 1);
    let mut cert = AnnihilationCertificate {
        k: 0,
        multiplier: p,
        cofactors: cofactors.iter().map(|c| Ok(r.parse(c)?.to_string())).collect::<Result<_>>()?,
        relation_cofactor: relation_cofactor.to_string(),
        rational_membership: false,
    };
    cert.rational_membership = rational_membership(class, p, cert.k)?;
    Ok(cert)
}

fn rational_membership(class: &CechClass, p: u64, k: u32) -> Result<bool> {
    let qq = torsion_ring(CoefficientDomain::Rational)?;
    let num = class.numerator.change_ring(qq.ring())?.scale(&CoefficientDomain::Rational.from_i64(p as i64));
    let seq = class.sequence.iter().map(|x| x.change_ring(qq.ring())).collect::<Result<Vec<_>>>()?;
    verify_zero_at(&CechClass::new(&qq, seq, class.m, num)?, k)
}

fn check_annihilation(a: &AnnihilationCertificate, class: &CechClass, p: u64) -> std::result::Result<(), PipelineFailure> {
    if a.multiplier != p {
        return fail(ANN, format!("multiplier {} is not {p}", a.multiplier));
    }
    let r = class.base_ring();
    if a.cofactors.len() != class.sequence.len() {
        return fail(ANN, "wrong number of cofactors");
    }
    let lhs = class.numerator.scale(&r.domain().from_i64(p as i64));
    let lhs = &lhs * &class.sequence_product().pow(a.k);
    let mut rhs = &at(ANN, r.parse(&a.relation_cofactor))? * &class.ring.relations()[0];
    for (c, x) in a.cofactors.iter().zip(&class.sequence) {
        rhs = &rhs + &(&at(ANN, r.parse(c))? * &x.pow(class.m + a.k));
    }
    if lhs != rhs {
        return fail(ANN, format!("cofactor identity fails at k = {}", a.k));
    }
    if !a.rational_membership || !at(ANN, rational_membership(class, p, a.k))? {
        return fail(ANN, "membership over QQ does not hold");
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub p: u64,
    pub class: CechClass,
    pub annihilation: AnnihilationCertificate,
    pub nonvanishing: NonvanishingCertificate,
}

impl TorsionCertificate {
    /// Independent re-check of both halves, without re-running the search.
    pub fn verify(&self) -> std::result::Result<(), PipelineFailure> {
        let fresh = at(CLASS, eta_class(self.p))?;
        if fresh != self.class {
            return fail(CLASS, "class differs from η_p");
        }
        if self.nonvanishing.p != self.p || self.nonvanishing.step1.lambda != self.class.numerator.to_string() {
            return fail(CLASS, "nonvanishing certificate is about a different class");
        }
        check_annihilation(&self.annihilation, &self.class, self.p)?;
        verify_weight_pipeline(&self.nonvanishing)
    }

    pub fn reverify(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn verdicts(&self) -> (VanishingVerdict, VanishingVerdict) {
        (self.annihilation.verdict(), self.nonvanishing.verdict())
    }
}

pub fn eta_torsion_check(p: u64, k_max: u32) -> Result<TorsionCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let class = eta_class(p)?;
    let annihilation = annihilation(&class, p)?;
    let nonvanishing = weight_pipeline(&class.numerator, p, k_max)?;
    let cert = TorsionCertificate { p, class, annihilation, nonvanishing };
    cert.verify()?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn final_reductions() {
        let c2 = eta_torsion_check(2, 2).unwrap();
        assert_eq!(c2.nonvanishing.step5.residual, "x*y");
        assert_eq!(c2.nonvanishing.step5.witness, "x*y");
        assert_eq!(c2.nonvanishing.step5.statement, "x*y ∉ (x^2, y^2) mod 2");
        let c3 = eta_torsion_check(3, 2).unwrap();
        assert_eq!(c3.nonvanishing.step5.residual, "2*x^2*y + 2*x*y^2");
        assert_eq!(c3.nonvanishing.step5.witness, "x^2*y");
    }

    #[test]
    fn sabotaged_lambda_fails_first_step() {
        let r = zz_ring().unwrap();
        for p in [2u64, 3] {
            let err = weight_pipeline(&r.parse(&format!("x^{p}")).unwrap(), p, 2).unwrap_err();
            assert!(err.stage.starts_with("step 1"), "{err}");
        }
    }

    #[test]
    fn tampered_exponent_is_rejected() {
        let mut c = eta_torsion_check(2, 1).unwrap();
        assert!(c.reverify());
        c.annihilation.k = 1;
        assert_eq!(c.verify().unwrap_err().stage, "annihilation");
    }

    #[test]
    fn weights_make_lambda_degree_0_0_0_p() {
        for p in [2u64, 3, 5] {
            let l = eta_class(p).unwrap().numerator;
            assert_eq!(
                l.multidegree(&weight_table()).unwrap(),
                WeightedDegree::Exactly(vec![0, 0, 0, p as i64])
            );
        }
    }
}
