use serde::{Deserialize, Serialize};

use crate::cohomology::{
    conjecture_membership_check, contracted_colon, verify_zero_at, CechClass, Presentation,
    TorsionCertificate, VanishingVerdict,
};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::polyring::{CoefficientDomain, Polynomial, Ring};
use crate::toeplitz::{
    build_matrix, det_oracle, divisibility_ladder, factor_census, generating_check_with,
    root_residual, st_ring, FactorCensus, LadderStep, QnFamily,
};

/// Self-contained evidence for one check. `holds` compares the recorded
/// result against the recorded expectation; `recheck` additionally
/// recomputes or re-verifies the recorded result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    Vanishing {
        class: CechClass,
        verdict: VanishingVerdict,
        expect_zero: bool,
        /// Largest acceptable witness exponent when vanishing is expected.
        max_k: Option<u32>,
    },
    Torsion {
        certificate: Box<TorsionCertificate>,
        expected_residual: Option<String>,
    },
    Annihilator {
        ring: Presentation,
        ideal: Vec<String>,
        element: String,
        subring: Vec<String>,
        result: Vec<String>,
        expected: Vec<String>,
    },
    Conjecture {
        vars: Vec<String>,
        f: Vec<String>,
        g: Vec<String>,
        p: u64,
        e: u32,
        k: u32,
        domain: CoefficientDomain,
        holds: bool,
    },
    Identity {
        ring: Presentation,
        lhs: String,
        rhs: String,
        equal: bool,
    },
    FrobeniusPower {
        ring: Presentation,
        ideal: Vec<String>,
        q: u32,
        power: Vec<String>,
        expected: Vec<String>,
    },
    RecursionOracle {
        domain: CoefficientDomain,
        determinants: Vec<String>,
        matches: bool,
    },
    GeneratingFunction {
        order: usize,
        /// Replaces `Q_2` by `t^2` before checking.
        sabotaged: bool,
        holds: bool,
    },
    NumericRoots {
        n: usize,
        tol: f64,
        max_residual: f64,
    },
    Census {
        census: FactorCensus,
    },
    Ladder {
        domain: CoefficientDomain,
        n_max: usize,
        steps: Vec<LadderStep>,
    },
}

fn parse_all(r: &std::sync::Arc<Ring>, xs: &[String]) -> Result<Vec<Polynomial>> {
    xs.iter().map(|x| r.parse(x)).collect()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub(crate) fn generating_sequence(order: usize, sabotaged: bool) -> Vec<Polynomial> {
    let ring = st_ring(CoefficientDomain::Rational);
    let mut fam = QnFamily::new(&ring).expect("s and t exist");
    let mut seq: Vec<Polynomial> = (0..=order).map(|n| fam.get(n).clone()).collect();
    if sabotaged && seq.len() > 2 {
        seq[2] = ring.parse("t^2").expect("literal");
    }
    seq
}

pub(crate) fn annihilator_result(
    ring: &Presentation,
    ideal: &[String],
    element: &str,
    subring: &[String],
) -> Result<Ideal> {
    let q = ring.build()?;
    let r = q.ring();
    let i = Ideal::new(r, parse_all(r, ideal)?)?;
    contracted_colon(&q, &i, &r.parse(element)?, subring)
}

/// `det M_n` equals both the recorded string and `Q_n` for `n = 1, 2, ...`.
pub(crate) fn recursion_matches(domain: CoefficientDomain, determinants: &[String]) -> Result<bool> {
    let ring = st_ring(domain);
    let mut fam = QnFamily::new(&ring)?;
    let mut ok = true;
    for (i, d) in determinants.iter().enumerate() {
        let d = ring.parse(d)?;
        ok &= det_oracle(&build_matrix(&ring, i + 1)?) == d && *fam.get(i + 1) == d;
    }
    Ok(ok)
}

impl Certificate {
    pub fn holds(&self) -> bool {
        match self {
            Certificate::None => false,
            Certificate::Vanishing { verdict, expect_zero, max_k, .. } => match verdict {
                VanishingVerdict::ZeroAt { k } => *expect_zero && max_k.is_none_or(|m| *k <= m),
                VanishingVerdict::UnknownUpTo { .. } => !expect_zero,
                VanishingVerdict::NonzeroCertified { .. } => !expect_zero,
            },
            Certificate::Torsion { certificate, expected_residual } => expected_residual
                .as_ref()
                .is_none_or(|r| *r == certificate.nonvanishing.step5.residual),
            Certificate::Annihilator { result, expected, .. } => result == expected,
            Certificate::Conjecture { holds, .. } => *holds,
            Certificate::Identity { equal, .. } => *equal,
            Certificate::FrobeniusPower { power, expected, .. } => power == expected,
            Certificate::RecursionOracle { determinants, matches, .. } => *matches && !determinants.is_empty(),
            Certificate::GeneratingFunction { sabotaged, holds, .. } => holds != sabotaged,
            Certificate::NumericRoots { tol, max_residual, .. } => max_residual < tol,
            Certificate::Census { census } => {
                let c = census.cumulative_counts();
                !census.s_factor_occurs && c.windows(2).all(|w| w[0] <= w[1]) && c.len() == census.n_max
            }
            Certificate::Ladder { steps, .. } => steps.iter().all(|s| s.divides),
        }
    }

    /// One-line digest: witness exponents, generators, counts.
    pub fn summary(&self) -> String {
        match self {
            Certificate::None => "no certificate".into(),
            Certificate::Vanishing { verdict, .. } => match verdict {
                VanishingVerdict::ZeroAt { k } => format!("zero at k = {k}"),
                VanishingVerdict::NonzeroCertified { certificate } => format!("nonzero: {certificate}"),
                VanishingVerdict::UnknownUpTo { k_max } => format!("not zero for k <= {k_max}"),
            },
            Certificate::Torsion { certificate, .. } => format!(
                "p*eta zero at k = {}; {}",
                certificate.annihilation.k, certificate.nonvanishing.step5.statement
            ),
            Certificate::Annihilator { result, .. } => format!("ann = ({})", result.join(", ")),
            Certificate::Conjecture { domain, holds, .. } => {
                format!("{} over {domain}", if *holds { "member" } else { "not a member" })
            }
            Certificate::Identity { equal, .. } => if *equal { "identity holds" } else { "sides differ" }.into(),
            Certificate::FrobeniusPower { power, .. } => format!("({})", power.join(", ")),
            Certificate::RecursionOracle { determinants, matches, .. } => {
                format!("{} determinants, {}", determinants.len(), if *matches { "all match" } else { "mismatch" })
            }
            Certificate::GeneratingFunction { order, holds, .. } => {
                format!("{} mod z^{}", if *holds { "holds" } else { "fails" }, order + 1)
            }
            Certificate::NumericRoots { max_residual, .. } => format!("max residual {max_residual:.3e}"),
            Certificate::Census { census } => {
                format!("{} distinct factors over GF({}) up to n = {}", census.final_count(), census.p, census.n_max)
            }
            Certificate::Ladder { steps, .. } => {
                format!("{}/{} divisibilities", steps.iter().filter(|s| s.divides).count(), steps.len())
            }
        }
    }

    /// `holds` plus an independent re-check of the recorded data.
    pub fn recheck(&self) -> bool {
        self.holds() && self.recheck_data().unwrap_or(false)
    }

    fn recheck_data(&self) -> Result<bool> {
        Ok(match self {
            Certificate::None => false,
            Certificate::Vanishing { class, verdict, .. } => match verdict {
                VanishingVerdict::ZeroAt { k } => {
                    verify_zero_at(class, *k)? && (0..*k).try_fold(true, |ok, j| Ok::<_, crate::Error>(ok && !verify_zero_at(class, j)?))?
                }
                VanishingVerdict::UnknownUpTo { k_max } => {
                    (0..=*k_max).try_fold(true, |ok, j| Ok::<_, crate::Error>(ok && !verify_zero_at(class, j)?))?
                }
                VanishingVerdict::NonzeroCertified { .. } => false,
            },
            Certificate::Torsion { certificate, .. } => certificate.reverify(),
            Certificate::Annihilator { ring, ideal, element, subring, result, .. } => {
                strings(annihilator_result(ring, ideal, element, subring)?.generators()) == *result
            }
            Certificate::Conjecture { vars, f, g, p, e, k, domain, holds } => {
                let r = Ring::new(vars, CoefficientDomain::Integer)?;
                conjecture_membership_check(&parse_all(&r, f)?, &parse_all(&r, g)?, *p, *e, *k, *domain)? == *holds
            }
            Certificate::Identity { ring, lhs, rhs, equal } => {
                let q = ring.build()?;
                (q.ring().parse(lhs)? == q.ring().parse(rhs)?) == *equal
            }
            Certificate::FrobeniusPower { ring, ideal, q, power, .. } => {
                let qr = ring.build()?;
                let i = Ideal::new(qr.ring(), parse_all(qr.ring(), ideal)?)?;
                strings(i.frobenius_power(*q)?.generators()) == *power
            }
            Certificate::RecursionOracle { domain, determinants, matches } => {
                recursion_matches(*domain, determinants)? == *matches
            }
            Certificate::GeneratingFunction { order, sabotaged, holds } => {
                generating_check_with(&generating_sequence(*order, *sabotaged), *order)? == *holds
            }
            Certificate::NumericRoots { n, tol, .. } => root_residual(*n)? < *tol,
            Certificate::Census { census } => factor_census(census.n_max, census.p)? == *census,
            Certificate::Ladder { domain, n_max, steps } => divisibility_ladder(*domain, *n_max)? == *steps,
        })
    }
}
