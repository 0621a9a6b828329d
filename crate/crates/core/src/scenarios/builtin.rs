use super::certificate::{annihilator_result, generating_sequence, recursion_matches, Certificate};
use super::{bound, prime_in, Diagnostics, Evidence, Params, Runner};
use crate::cohomology::{
    annihilator_in_subring, eta_torsion_check, is_zero_up_to, CechClass, Presentation, DEFAULT_K_MAX,
};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{CoefficientDomain, Monomial, MonomialOrder, Polynomial, Ring};
use crate::toeplitz::{
    build_matrix, det_oracle, divisibility_ladder, factor_census, generating_check_with, root_residual,
    st_ring, QnFamily,
};

const S_BUDGET_MS: f64 = 60_000.0;
const ROOT_TOL: f64 = 1e-8;

pub(super) fn defaults(name: &str) -> Params {
    let mut p = Params::default();
    match name {
        "hartshorne" => {
            p.n_max = Some(4);
            p.k_max = Some(DEFAULT_K_MAX);
        }
        "singh-p-torsion" => {
            p.primes = Some(vec![2, 3, 5, 7]);
            p.k_max = Some(DEFAULT_K_MAX);
        }
        "ptor2-theorem" => {
            p.primes = Some(vec![3]);
            p.e = Some(1);
            p.p = Some(5);
            p.f = Some(vec!["x".into(), "y".into(), "z".into()]);
            p.g = Some(vec!["y*z".into(), "z*x".into(), "-2*x*y".into()]);
        }
        "ring-A-colon" => {
            p.n_max = Some(4);
            p.p = Some(101);
        }
        "ring-B-colon" => {
            p.n_max = Some(3);
            p.p = Some(101);
        }
        "singh-swanson-S" => {
            p.n_max = Some(3);
            p.p = Some(2);
            p.q_list = Some(vec![2]);
        }
        "toeplitz-suite" => {
            p.n_max = Some(16);
            p.p = Some(5);
        }
        _ => {}
    }
    p
}

pub(super) fn validate(name: &str, p: &Params) -> Result<()> {
    if let Some(k) = p.k_max {
        bound("k_max", k, 0, 12)?;
    }
    match name {
        "hartshorne" => bound("n_max", p.n_max.unwrap(), 0, 8)?,
        "singh-p-torsion" => {
            let primes = p.primes.as_ref().unwrap();
            bound("number of primes", primes.len(), 1, 8)?;
            for &q in primes {
                prime_in("primes[]", q, 13)?;
            }
        }
        "ptor2-theorem" => {
            let primes = p.primes.as_ref().unwrap();
            bound("number of primes", primes.len(), 1, 4)?;
            for &q in primes {
                prime_in("primes[]", q, 7)?;
            }
            bound("e", p.e.unwrap(), 1, 2)?;
            for &q in primes {
                bound("q = p^e", q.pow(p.e.unwrap()), 2, 25)?;
            }
            prime_in("p", p.p.unwrap(), 65521)?;
            let (f, g) = (p.f.as_ref().unwrap(), p.g.as_ref().unwrap());
            if f.len() != g.len() || f.is_empty() {
                return Err(Error::ParamOutOfBounds("f and g must be nonempty lists of equal length".into()));
            }
            bound("length of f", f.len(), 1, 6)?;
            syzygy_ring(f, g)?;
        }
        "ring-A-colon" => {
            bound("n_max", p.n_max.unwrap(), 1, 8)?;
            prime_in("p", p.p.unwrap(), 65521)?;
        }
        "ring-B-colon" => {
            bound("n_max", p.n_max.unwrap(), 1, 6)?;
            prime_in("p", p.p.unwrap(), 65521)?;
        }
        "singh-swanson-S" => {
            bound("n_max", p.n_max.unwrap(), 1, 4)?;
            let ch = p.p.unwrap();
            prime_in("p", ch, 65521)?;
            for &q in p.q_list.as_ref().unwrap() {
                bound("q_list[]", q, 2, 4)?;
                if !is_power_of(q as u64, ch) {
                    return Err(Error::ParamOutOfBounds(format!("q = {q} is not a power of p = {ch}")));
                }
            }
        }
        "toeplitz-suite" => {
            bound("n_max", p.n_max.unwrap(), 1, 40)?;
            prime_in("p", p.p.unwrap(), 65521)?;
        }
        _ => {}
    }
    Ok(())
}

fn is_power_of(mut q: u64, p: u64) -> bool {
    while q > 1 && q % p == 0 {
        q /= p;
    }
    q == 1
}

pub(super) fn run(name: &str, p: &Params, r: &mut Runner) -> Result<()> {
    match name {
        "hartshorne" => hartshorne(p, r),
        "singh-p-torsion" => torsion(p, r),
        "ptor2-theorem" => ptor2(p, r),
        "ring-A-colon" => ring_a(p, r),
        "ring-B-colon" => ring_b(p, r),
        "singh-swanson-S" => ring_s(p, r),
        "katzman-factorization" => katzman(r),
        "toeplitz-suite" => toeplitz(p, r),
        other => return Err(Error::UnknownScenario(other.to_string())),
    }
}

fn pres(vars: &[&str], domain: CoefficientDomain, relations: &[&str]) -> Presentation {
    Presentation {
        vars: vars.iter().map(|v| v.to_string()).collect(),
        domain,
        relations: relations.iter().map(|v| v.to_string()).collect(),
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn fp(p: u64) -> Result<CoefficientDomain> {
    CoefficientDomain::prime_field(p)
}

/// `Q_n` over `domain`, made monic, as the single generator of its ideal.
fn q_generator(n: usize, domain: CoefficientDomain) -> Result<Vec<String>> {
    let ring = st_ring(domain);
    let q = QnFamily::new(&ring)?.get(n).monic(&MonomialOrder::GrevLex);
    Ok(vec![q.to_string()])
}

/// `Q_n` with `s^2` replaced by `s`, the answer for the relation `s a^2 + t a b + b^2`.
fn q_generator_halved(n: usize, domain: CoefficientDomain) -> Result<Vec<String>> {
    let ring = st_ring(domain);
    let q = QnFamily::new(&ring)?.get(n).clone();
    let halved = Polynomial::from_terms(
        &ring,
        q.terms().map(|(m, c)| (Monomial::from_exponents(&[m.exponent(0) / 2, m.exponent(1)]), c.clone())),
    );
    Ok(vec![halved.monic(&MonomialOrder::GrevLex).to_string()])
}

fn annihilator_evidence(
    ring: &Presentation,
    ideal: Vec<String>,
    element: String,
    subring: &[&str],
    expected: Vec<String>,
) -> Result<Evidence> {
    let subring: Vec<String> = subring.iter().map(|s| s.to_string()).collect();
    let ann = annihilator_result(ring, &ideal, &element, &subring)?;
    let diag = Diagnostics { gb: Some(*ann.stats()), message: None };
    let cert = Certificate::Annihilator {
        ring: ring.clone(),
        ideal,
        element,
        subring,
        result: strings(ann.generators()),
        expected,
    };
    Ok((cert, diag))
}

fn class_annihilator(c: &CechClass, k: u32, subring: &[&str], expected: Vec<String>) -> Result<Evidence> {
    let pushed = c.push_forward(k);
    let ideal = strings(pushed.power_ideal(pushed.m).generators());
    let ann = annihilator_in_subring(c, subring, k)?;
    let diag = Diagnostics { gb: Some(*ann.stats()), message: None };
    let cert = Certificate::Annihilator {
        ring: Presentation::of(&c.ring),
        ideal,
        element: pushed.numerator.to_string(),
        subring: subring.iter().map(|s| s.to_string()).collect(),
        result: strings(ann.generators()),
        expected,
    };
    Ok((cert, diag))
}

fn vanishing(class: CechClass, k_max: u32, expect_zero: bool, max_k: Option<u32>) -> Result<Evidence> {
    let verdict = is_zero_up_to(&class, k_max)?;
    Ok((Certificate::Vanishing { class, verdict, expect_zero, max_k }, Diagnostics::default()))
}

fn hartshorne(p: &Params, r: &mut Runner) -> Result<()> {
    let n_max = p.n_max.unwrap() as u32;
    let k_max = p.k_max.unwrap();
    let ring = pres(&["w", "x", "y", "z"], CoefficientDomain::Rational, &["w*x - y*z"]).build()?;
    for n in 0..=n_max {
        let class = CechClass::parse(&ring, &["x", "y"], n + 1, &format!("y^{n}*z^{n}"))?;
        for v in ["w", "x", "y", "z"] {
            let var = ring.ring().var(v)?;
            r.check(format!("kill[n={n},{v}]"), "ZeroAt(k) with k <= 2", true, None, || {
                vanishing(class.multiply(&var)?, k_max, true, Some(2))
            });
        }
        r.check(format!("class[n={n}]"), format!("no vanishing found for k <= {k_max}"), true, None, || {
            vanishing(class.clone(), k_max, false, None)
        });
    }
    r.note("Nonvanishing of the socle classes is not certified: a bounded search can only report UnknownUpTo.");
    Ok(())
}

fn expected_residual(p: u64) -> Option<String> {
    match p {
        2 => Some("x*y".into()),
        3 => Some("2*x^2*y + 2*x*y^2".into()),
        _ => None,
    }
}

fn torsion(p: &Params, r: &mut Runner) -> Result<()> {
    let k_max = p.k_max.unwrap();
    for &q in p.primes.as_ref().unwrap() {
        let expected = match expected_residual(q) {
            Some(res) => format!("p*eta_p = 0 and eta_p != 0, final step {res} ∉ (x^{q}, y^{q}) mod {q}"),
            None => "p*eta_p = 0 and eta_p != 0, all five steps re-verify".to_string(),
        };
        r.check(format!("torsion[p={q}]"), expected, true, None, || {
            let cert = eta_torsion_check(q, k_max)?;
            Ok((
                Certificate::Torsion { certificate: Box::new(cert), expected_residual: expected_residual(q) },
                Diagnostics::default(),
            ))
        });
    }
    r.note(format!("degree forcing in the weight reduction is checked for every k <= {k_max}"));
    Ok(())
}

/// Variables in order of first appearance in `f` and `g`.
fn syzygy_ring(f: &[String], g: &[String]) -> Result<std::sync::Arc<Ring>> {
    let mut vars: Vec<String> = Vec::new();
    for text in f.iter().chain(g) {
        for tok in text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
            if tok.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && !vars.iter().any(|v| v == tok) {
                vars.push(tok.to_string());
            }
        }
    }
    if vars.is_empty() {
        vars.push("x".into());
    }
    let ring = Ring::new(&vars, CoefficientDomain::Integer)?;
    for text in f.iter().chain(g) {
        ring.parse(text)?;
    }
    Ok(ring)
}

fn ptor2(p: &Params, r: &mut Runner) -> Result<()> {
    let (f, g) = (p.f.clone().unwrap(), p.g.clone().unwrap());
    let ring = syzygy_ring(&f, &g)?;
    let vars = ring.vars().to_vec();
    let e = p.e.unwrap();
    let ch = p.p.unwrap();
    let lhs = f.iter().zip(&g).map(|(a, b)| format!("({a})*({b})")).collect::<Vec<_>>().join(" + ");
    let zring = Presentation { vars: vars.clone(), domain: CoefficientDomain::Integer, relations: vec![] };
    r.check("syzygy", "sum of f_i*g_i is 0", true, None, || {
        let equal = ring.parse(&lhs)?.is_zero();
        Ok((Certificate::Identity { ring: zring.clone(), lhs: lhs.clone(), rhs: "0".into(), equal }, Diagnostics::default()))
    });
    for &prime in p.primes.as_ref().unwrap() {
        let q = prime.pow(e) as u32;
        let k = q - 1;
        for domain in [CoefficientDomain::Rational, fp(ch)?] {
            r.check(
                format!("membership[q={q},k={k},{domain}]"),
                format!("lambda_q (g_1...g_n)^{k} lies in (g_i^{})", q + k),
                true,
                None,
                || {
                    let fs = f.iter().map(|x| ring.parse(x)).collect::<Result<Vec<_>>>()?;
                    let gs = g.iter().map(|x| ring.parse(x)).collect::<Result<Vec<_>>>()?;
                    let holds = crate::cohomology::conjecture_membership_check(&fs, &gs, prime, e, k, domain)?;
                    let cert = Certificate::Conjecture {
                        vars: vars.clone(),
                        f: f.clone(),
                        g: g.clone(),
                        p: prime,
                        e,
                        k,
                        domain,
                        holds,
                    };
                    Ok((cert, Diagnostics::default()))
                },
            );
        }
    }
    r.note(format!(
        "verified over QQ and GF({ch}) only; the statement over ZZ is stronger and is not decided here"
    ));
    Ok(())
}

const RING_A: &str = "s*a^2 + t*a*b + s*b^2";
const RING_A_LITERAL: &str = "s*a^2 + t*a*b + b^2";

fn ring_a(p: &Params, r: &mut Runner) -> Result<()> {
    let domain = fp(p.p.unwrap())?;
    let n_max = p.n_max.unwrap();
    let ring = pres(&["s", "t", "a", "b"], domain, &[RING_A]).build()?;
    let literal = pres(&["s", "t", "a", "b"], domain, &[RING_A_LITERAL]).build()?;
    for n in 1..=n_max {
        let num = format!("s*a*b^{}", n - 1);
        let class = CechClass::parse(&ring, &["a", "b"], n as u32, &num)?;
        let expected = q_generator(n - 1, domain)?;
        r.check(format!("colon[n={n}]"), format!("(Q_{}) = ({})", n - 1, expected[0]), true, None, || {
            class_annihilator(&class, 0, &["s", "t"], expected.clone())
        });
        r.check(format!("vanishes[n={n}]"), "ZeroAt(k) with k <= 1", false, None, || {
            vanishing(class.clone(), 1, true, Some(1))
        });
        let lit = CechClass::parse(&literal, &["a", "b"], n as u32, &num)?;
        let halved = q_generator_halved(n - 1, domain)?;
        r.check(
            format!("literal-relation[n={n}]"),
            format!("({}), i.e. Q_{} with s^2 -> s", halved[0], n - 1),
            false,
            None,
            || class_annihilator(&lit, 0, &["s", "t"], halved.clone()),
        );
    }
    r.note(format!("relation {RING_A}; the presentation {RING_A_LITERAL} is run as an informational check"));
    r.note("every class vanishes after one step, so only the colon at k = 0 is compared with Q_(n-1)");
    r.note(format!("sampled field: {domain}"));
    Ok(())
}

fn ring_b(p: &Params, r: &mut Runner) -> Result<()> {
    let domain = fp(p.p.unwrap())?;
    let ring = pres(&["s", "t", "a", "b", "c"], domain, &["s*a^2 + s*b^2 + t*a*b + t*c^2"]);
    for n in 1..=p.n_max.unwrap() {
        let expected = q_generator(n - 1, domain)?;
        let ideal = vec![format!("a^{n}"), format!("b^{n}"), "c".to_string()];
        let element = format!("s*a*b^{}", n - 1);
        let ring = ring.clone();
        let ideal = {
            let q = ring.build()?;
            strings(&ideal.iter().map(|i| q.ring().parse(i)).collect::<Result<Vec<_>>>()?)
        };
        let element = ring.build()?.ring().parse(&element)?.to_string();
        r.check(format!("colon[n={n}]"), format!("(Q_{}) = ({})", n - 1, expected[0]), true, None, || {
            annihilator_evidence(&ring, ideal, element, &["s", "t"], expected.clone())
        });
    }
    r.note(format!("sampled field: {domain}"));
    Ok(())
}

const RING_S: &str = "s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + t*w^2*z^2";

fn eta_n(ring: &crate::groebner::QuotientRing, n: u32) -> Result<CechClass> {
    let num = format!("s*u*x*(v*y)^{}*z^{}", n - 1, n - 1);
    CechClass::parse(ring, &["x", "y", "z"], n, &num)
}

fn ring_s(p: &Params, r: &mut Runner) -> Result<()> {
    let domain = fp(p.p.unwrap())?;
    let ring = pres(&["s", "t", "u", "v", "w", "x", "y", "z"], domain, &[RING_S]).build()?;
    for n in 1..=p.n_max.unwrap() {
        let class = eta_n(&ring, n as u32)?;
        let expected = q_generator(n - 1, domain)?;
        for k in 0..=1 {
            r.check(
                format!("annihilator[n={n},k={k}]"),
                format!("(Q_{}) = ({})", n - 1, expected[0]),
                true,
                Some(S_BUDGET_MS),
                || class_annihilator(&class, k, &["s", "t"], expected.clone()),
            );
        }
    }
    for &q in p.q_list.as_ref().unwrap() {
        let seq = Ideal::parse(ring.ring(), &["x", "y", "z"])?;
        let class = eta_n(&ring, q)?;
        let expected_power = strings(class.power_ideal(q).generators());
        r.check(format!("frobenius-power[q={q}]"), "(x,y,z)^[q] = (x^q, y^q, z^q)", true, None, || {
            let power = strings(seq.frobenius_power(q)?.generators());
            let cert = Certificate::FrobeniusPower {
                ring: Presentation::of(&ring),
                ideal: strings(seq.generators()),
                q,
                power,
                expected: expected_power.clone(),
            };
            Ok((cert, Diagnostics::default()))
        });
        let expected = q_generator(q as usize - 1, domain)?;
        r.check(
            format!("frobenius-witness[q={q}]"),
            format!("ann of [lambda + (x,y,z)^[{q}]] in K[s,t] is (Q_{})", q - 1),
            true,
            Some(S_BUDGET_MS),
            || class_annihilator(&class, 0, &["s", "t"], expected.clone()),
        );
    }
    r.note("Frobenius witnesses at q reuse the annihilator of eta_n with n = q");
    r.note("passing from infinitely many annihilators to infinitely many associated primes of S is cited, not machine-checked");
    r.note(format!("sampled field: {domain}"));
    Ok(())
}

fn katzman(r: &mut Runner) -> Result<()> {
    let ring = pres(&["s", "t", "u", "v", "x", "y"], CoefficientDomain::Integer, &[]);
    let lhs = "s*u^2*x^2 - (s + t)*u*x*v*y + t*v^2*y^2".to_string();
    let rhs = "(s*u*x - t*v*y)*(u*x - v*y)".to_string();
    r.check("factorization", "both sides expand to the same polynomial", true, None, || {
        let q = ring.build()?;
        let equal = q.ring().parse(&lhs)? == q.ring().parse(&rhs)?;
        Ok((Certificate::Identity { ring: ring.clone(), lhs: lhs.clone(), rhs: rhs.clone(), equal }, Diagnostics::default()))
    });
    r.note("the associated primes of this example are not enumerated; the identity shows the ring is not a domain");
    Ok(())
}

fn toeplitz(p: &Params, r: &mut Runner) -> Result<()> {
    let n_max = p.n_max.unwrap();
    let ch = p.p.unwrap();
    for domain in [CoefficientDomain::Rational, fp(ch)?] {
        r.check(format!("recursion-vs-determinant[{domain}]"), "Q_n = det M_n for 1 <= n <= 10", true, None, || {
            let ring = st_ring(domain);
            let determinants: Vec<String> =
                (1..=n_max.min(10)).map(|n| Ok(det_oracle(&build_matrix(&ring, n)?).to_string())).collect::<Result<_>>()?;
            let matches = recursion_matches(domain, &determinants)?;
            Ok((Certificate::RecursionOracle { domain, determinants, matches }, Diagnostics::default()))
        });
    }
    for sabotaged in [false, true] {
        let name = if sabotaged { "generating-function-sabotaged" } else { "generating-function" };
        let expected = if sabotaged { "identity fails when Q_2 is replaced by t^2" } else { "identity holds mod z^13" };
        r.check(name, expected, true, None, || {
            let holds = generating_check_with(&generating_sequence(12, sabotaged), 12)?;
            Ok((Certificate::GeneratingFunction { order: 12, sabotaged, holds }, Diagnostics::default()))
        });
    }
    for n in 1..=n_max.min(12) {
        r.check(format!("roots[n={n}]"), format!("|Q_{n}(1, 2cos(r pi/{}))| < {ROOT_TOL:e}", n + 1), true, None, || {
            let max_residual = root_residual(n)?;
            Ok((Certificate::NumericRoots { n, tol: ROOT_TOL, max_residual }, Diagnostics::default()))
        });
    }
    r.check(
        format!("census[p={ch}]"),
        "cumulative count of distinct irreducible factors is nondecreasing; s never divides Q_n",
        true,
        None,
        || Ok((Certificate::Census { census: factor_census(n_max, ch)? }, Diagnostics::default())),
    );
    for domain in [CoefficientDomain::Rational, fp(ch)?] {
        r.check(format!("divisibility-ladder[{domain}]"), "m | n implies Q_(m-1) | Q_(n-1) at s = 1", true, None, || {
            let steps = divisibility_ladder(domain, n_max)?;
            Ok((Certificate::Ladder { domain, n_max, steps }, Diagnostics::default()))
        });
    }
    r.note("the census is finite evidence for the infinitude of irreducible factors, not a proof");
    Ok(())
}
