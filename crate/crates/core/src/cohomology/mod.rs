//! Local cohomology classes `[f + (x_1^m, ..., x_n^m)]` in the direct-limit
//! description, their zero test, p-torsion certificates and annihilators.

mod lambda;
mod torsion;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use lambda::{conjecture_membership_check, lambda_q};
pub use torsion::{
    eta_class, eta_torsion_check, torsion_ring, verify_weight_pipeline, weight_pipeline,
    weight_reduction_nonvanishing, weight_table, AnnihilationCertificate, DegreeSolution,
    MonomialIdentity, NonvanishingCertificate, PipelineFailure, Step1, Step2, Step3, Step4,
    Step5, TorsionCertificate,
};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, QuotientRing};
use crate::polyring::{same_ring, CoefficientDomain, Monomial, Polynomial, Ring};

pub const DEFAULT_K_MAX: u32 = 6;

/// A ring presentation in plain strings: variables, coefficients and
/// relations in infix form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub vars: Vec<String>,
    pub domain: CoefficientDomain,
    pub relations: Vec<String>,
}

impl Presentation {
    pub fn of(q: &QuotientRing) -> Self {
        Presentation {
            vars: q.ring().vars().to_vec(),
            domain: q.ring().domain(),
            relations: q.relations().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn build(&self) -> Result<QuotientRing> {
        let ring = Ring::new(&self.vars, self.domain)?;
        let rels = self.relations.iter().map(|r| ring.parse(r)).collect::<Result<Vec<_>>>()?;
        QuotientRing::new(&ring, rels)
    }
}

/// `[f + (x_1^m, ..., x_n^m)]` in `H^n_{(x_1..x_n)}(R)`.
#[derive(Clone, Debug)]
pub struct CechClass {
    pub ring: QuotientRing,
    pub sequence: Vec<Polynomial>,
    pub m: u32,
    pub numerator: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechClassData {
    pub ring: Presentation,
    pub sequence: Vec<String>,
    pub m: u32,
    pub numerator: String,
}

impl CechClass {
    pub fn new(ring: &QuotientRing, sequence: Vec<Polynomial>, m: u32, numerator: Polynomial) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidExponent("class exponent m must be at least 1".into()));
        }
        if sequence.is_empty() {
            return Err(Error::InvalidArgument("empty sequence".into()));
        }
        let r = ring.ring();
        if sequence.iter().chain([&numerator]).any(|p| !same_ring(p.ring(), r)) {
            return Err(Error::RingMismatch);
        }
        Ok(CechClass { ring: ring.clone(), sequence, m, numerator })
    }

    pub fn parse(ring: &QuotientRing, sequence: &[&str], m: u32, numerator: &str) -> Result<Self> {
        let r = ring.ring();
        let seq = sequence.iter().map(|s| r.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, seq, m, r.parse(numerator)?)
    }

    pub fn base_ring(&self) -> &Arc<Ring> {
        self.ring.ring()
    }

    /// `x_1 ⋯ x_n`.
    pub fn sequence_product(&self) -> Polynomial {
        self.sequence.iter().fold(self.base_ring().one(), |acc, x| &acc * x)
    }

    /// The ideal `(x_1^e, ..., x_n^e)`.
    pub fn power_ideal(&self, e: u32) -> Ideal {
        let gens = self.sequence.iter().map(|x| x.pow(e)).collect();
        Ideal::new(self.base_ring(), gens).expect("same ring")
    }

    /// Image under `steps` transition maps.
    pub fn push_forward(&self, steps: u32) -> CechClass {
        CechClass {
            ring: self.ring.clone(),
            sequence: self.sequence.clone(),
            m: self.m + steps,
            numerator: &self.numerator * &self.sequence_product().pow(steps),
        }
    }

    /// `g · [f + ...] = [g f + ...]`.
    pub fn multiply(&self, g: &Polynomial) -> Result<CechClass> {
        Ok(CechClass { numerator: self.numerator.try_mul(g)?, ..self.clone() })
    }

    pub fn to_data(&self) -> CechClassData {
        CechClassData {
            ring: Presentation::of(&self.ring),
            sequence: self.sequence.iter().map(|x| x.to_string()).collect(),
            m: self.m,
            numerator: self.numerator.to_string(),
        }
    }

    pub fn from_data(d: &CechClassData) -> Result<Self> {
        let ring = d.ring.build()?;
        let seq: Vec<&str> = d.sequence.iter().map(String::as_str).collect();
        Self::parse(&ring, &seq, d.m, &d.numerator)
    }
}

impl PartialEq for CechClass {
    fn eq(&self, other: &Self) -> bool {
        self.to_data() == other.to_data()
    }
}

impl Serialize for CechClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_data().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CechClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = CechClassData::deserialize(d)?;
        CechClass::from_data(&data).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VanishingVerdict {
    ZeroAt { k: u32 },
    NonzeroCertified { certificate: String },
    UnknownUpTo { k_max: u32 },
}

impl VanishingVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, VanishingVerdict::ZeroAt { .. })
    }
}

fn monomial_of(p: &Polynomial) -> Option<Monomial> {
    match p.as_term() {
        Some((m, c)) if p.domain().is_one(c) => Some(m.clone()),
        _ => None,
    }
}

/// `f (x_1⋯x_n)^k ∈ (x_1^{m+k}, ..., x_n^{m+k})` modulo the relations.
pub fn verify_zero_at(c: &CechClass, k: u32) -> Result<bool> {
    let target = &c.numerator * &c.sequence_product().pow(k);
    let ideal = c.power_ideal(c.m + k);
    if c.base_ring().domain().is_field() {
        return ideal.contains(&target, Some(&c.ring));
    }
    // over ℤ only monomial sequences in a polynomial ring, where membership is termwise
    let mons: Option<Vec<Monomial>> = ideal.generators().iter().map(monomial_of).collect();
    match mons {
        Some(mons) if c.ring.relations().is_empty() => {
            Ok(target.terms().all(|(t, _)| mons.iter().any(|m| m.divides(t))))
        }
        _ => Err(Error::DomainNotSupported {
            op: "class zero test with relations or non-monomial sequence",
            domain: c.base_ring().domain().to_string(),
        }),
    }
}

/// Least `k ≤ k_max` witnessing that the class vanishes. A class that does
/// not vanish in range is reported as unknown, never as nonzero.
pub fn is_zero_up_to(c: &CechClass, k_max: u32) -> Result<VanishingVerdict> {
    for k in 0..=k_max {
        if verify_zero_at(c, k)? {
            return Ok(VanishingVerdict::ZeroAt { k });
        }
    }
    Ok(VanishingVerdict::UnknownUpTo { k_max })
}

/// `(ideal + relations) : element`, contracted to the polynomial subring on
/// `subring_vars` (in the order given).
pub fn contracted_colon<S: AsRef<str>>(
    ring: &QuotientRing,
    ideal: &Ideal,
    element: &Polynomial,
    subring_vars: &[S],
) -> Result<Ideal> {
    let base = ring.ring();
    for v in subring_vars {
        base.var_index(v.as_ref())?;
    }
    let keep: Vec<&str> = subring_vars.iter().map(|v| v.as_ref()).collect();
    let drop: Vec<&String> = base.vars().iter().filter(|v| !keep.contains(&v.as_str())).collect();
    let contracted = ideal.colon(element, Some(ring))?.eliminate(&drop)?;
    let sub = base.subring(&keep)?;
    let gens = contracted.generators().iter().map(|g| g.change_ring(&sub)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&sub, gens)?.with_config(contracted.config()).with_stats(*contracted.stats()))
}

/// `((x_i^{m+k}) + relations) : f (x_1⋯x_n)^k`, contracted to the
/// polynomial subring on `subring_vars`.
pub fn annihilator_in_subring<S: AsRef<str>>(c: &CechClass, subring_vars: &[S], k: u32) -> Result<Ideal> {
    let pushed = c.push_forward(k);
    contracted_colon(&c.ring, &pushed.power_ideal(pushed.m), &pushed.numerator, subring_vars)
}
