mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use locoh::cohomology::{
    annihilator_in_subring, conjecture_membership_check, contracted_colon, eta_torsion_check, is_zero_up_to,
    verify_zero_at, CechClass, Presentation, VanishingVerdict, DEFAULT_K_MAX,
};
use locoh::groebner::{Ideal, QuotientRing};
use locoh::polyring::{CoefficientDomain, MonomialOrder, Polynomial, Ring};
use locoh::scenarios::{reverify, run_scenario, Params};
use locoh::toeplitz::{
    build_matrix, det_oracle, factor_census, generating_check, generating_check_with, qn_recursive,
    roots_numeric_check, st_ring, QnFamily,
};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::fp::{brute_factor, qn_dehomogenized};
use common::{colon_case, colon_cases, gb_case, gb_cases, membership_case, membership_cases};

const ROOT_TOL: f64 = 1e-8;
const CENSUS_F5: [usize; 16] = [1, 3, 4, 6, 7, 9, 10, 12, 12, 14, 16, 22, 23, 23, 24, 26];

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn quotient(vars: &[&str], domain: CoefficientDomain, rels: &[&str]) -> Result<QuotientRing, String> {
    Presentation {
        vars: vars.iter().map(|v| v.to_string()).collect(),
        domain,
        relations: rels.iter().map(|r| r.to_string()).collect(),
    }
    .build()
    .map_err(err)
}

/// Bareiss elimination on the tridiagonal matrix with `t` on the diagonal
/// and `s` beside it.
fn int_det(n: usize, s: i128, t: i128) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => t,
                    1 => s,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn eval_st(p: &Polynomial, s: i64, t: i64) -> Result<Polynomial, String> {
    let r = p.ring();
    p.substitute(&[("s", r.int(s)), ("t", r.int(t))]).map_err(err)
}

/// `Q_n` over ℤ reduced mod `p` and made monic, as printed in `K[s, t]`.
fn expected_q(n: usize, p: u64) -> Result<String, String> {
    let zz = st_ring(CoefficientDomain::Integer);
    let q = qn_recursive(&zz, n).map_err(err)?.poly.reduce_mod_p(p).map_err(err)?;
    Ok(q.monic(&MonomialOrder::GrevLex).to_string())
}

fn single_generator(i: &Ideal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

fn c1_toeplitz_equality() -> Outcome {
    let ring = st_ring(CoefficientDomain::Integer);
    for n in 1..=10 {
        let q = qn_recursive(&ring, n).map_err(err)?.poly;
        let det = det_oracle(&build_matrix(&ring, n).map_err(err)?);
        ensure(q == det, format!("Q_{n} != det M_{n}"))?;
        for (s, t) in [(1, 1), (2, -3), (-5, 7), (3, 0), (11, 4)] {
            let v = int_det(n, s as i128, t as i128);
            let expect = ring.int(i64::try_from(v).map_err(err)?);
            ensure(eval_st(&q, s, t)? == expect, format!("Q_{n}({s}, {t}) != {v}"))?;
        }
    }
    Ok(())
}

fn c2_generating_function() -> Outcome {
    let ring = st_ring(CoefficientDomain::Integer);
    ensure(generating_check(&ring, 12).map_err(err)?, "generating_check(12) is false")?;
    let mut fam = QnFamily::new(&ring).map_err(err)?;
    let mut seq: Vec<Polynomial> = (0..=12).map(|n| fam.get(n).clone()).collect();
    seq[7] = &seq[7] + &ring.parse("s^2*t^5").map_err(err)?;
    ensure(!generating_check_with(&seq, 12).map_err(err)?, "sabotaged sequence passes")
}

fn c3_complex_roots() -> Outcome {
    for n in 1..=10 {
        ensure(roots_numeric_check(n, ROOT_TOL).map_err(err)?, format!("roots of Q_{n} off by more than {ROOT_TOL:e}"))?;
    }
    Ok(())
}

fn c4_census() -> Outcome {
    let p = 5;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut oracle = Vec::new();
    for n in 1..=16 {
        for (g, _) in brute_factor(&qn_dehomogenized(n, p), p) {
            seen.insert(g);
        }
        oracle.push(seen.len());
    }
    ensure(oracle == CENSUS_F5, format!("brute-force oracle drifted: {oracle:?}"))?;
    let census = factor_census(16, p).map_err(err)?;
    let counts = census.cumulative_counts();
    ensure(counts.windows(2).all(|w| w[0] <= w[1]), "cumulative count decreases")?;
    ensure(counts == oracle, format!("census {counts:?} != oracle {oracle:?}"))
}

fn c5_torsion() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let cert = eta_torsion_check(p, DEFAULT_K_MAX).map_err(err)?;
        ensure(cert.reverify(), format!("p = {p}: certificate does not reverify"))?;
        let (kill, nonzero) = cert.verdicts();
        ensure(kill == VanishingVerdict::ZeroAt { k: 0 }, format!("p = {p}: p*eta is {kill:?}"))?;
        ensure(matches!(nonzero, VanishingVerdict::NonzeroCertified { .. }), format!("p = {p}: {nonzero:?}"))?;
        let statement = &cert.nonvanishing.step5.statement;
        let pinned = match p {
            2 => Some("x*y ∉ (x^2, y^2) mod 2"),
            3 => Some("2*x^2*y + 2*x*y^2 ∉ (x^3, y^3) mod 3"),
            _ => None,
        };
        if let Some(s) = pinned {
            ensure(statement == s, format!("p = {p}: final step reads {statement:?}"))?;
        }
    }
    Ok(())
}

fn c6_ring_a() -> Outcome {
    let p = 101;
    let ring = quotient(&["s", "t", "a", "b"], CoefficientDomain::PrimeField(p as u32), &["s*a^2 + t*a*b + s*b^2"])?;
    for n in 1..=4u32 {
        let class = CechClass::parse(&ring, &["a", "b"], n, &format!("s*a*b^{}", n - 1)).map_err(err)?;
        let ann = annihilator_in_subring(&class, &["s", "t"], 0).map_err(err)?;
        let want = expected_q(n as usize - 1, p)?;
        ensure(single_generator(&ann) == vec![want.clone()], format!("n = {n}: {:?} != ({want})", single_generator(&ann)))?;
    }
    Ok(())
}

fn c7_ring_b() -> Outcome {
    let p = 101;
    let ring = quotient(
        &["s", "t", "a", "b", "c"],
        CoefficientDomain::PrimeField(p as u32),
        &["s*a^2 + s*b^2 + t*a*b + t*c^2"],
    )?;
    for n in 2..=3usize {
        let ideal = Ideal::parse(ring.ring(), &[&format!("a^{n}"), &format!("b^{n}"), "c"]).map_err(err)?;
        let element = ring.ring().parse(&format!("s*a*b^{}", n - 1)).map_err(err)?;
        let ann = contracted_colon(&ring, &ideal, &element, &["s", "t"]).map_err(err)?;
        let want = expected_q(n - 1, p)?;
        ensure(single_generator(&ann) == vec![want.clone()], format!("n = {n}: {:?} != ({want})", single_generator(&ann)))?;
    }
    Ok(())
}

fn c8_ring_s() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(60);
    let ring = quotient(
        &["s", "t", "u", "v", "w", "x", "y", "z"],
        CoefficientDomain::PrimeField(2),
        &["s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + t*w^2*z^2"],
    )?;
    for n in 2..=3u32 {
        let num = format!("s*u*x*(v*y)^{}*z^{}", n - 1, n - 1);
        let class = CechClass::parse(&ring, &["x", "y", "z"], n, &num).map_err(err)?;
        let start = Instant::now();
        let ann = annihilator_in_subring(&class, &["s", "t"], 0).map_err(err)?;
        ensure(start.elapsed() < BUDGET, format!("n = {n}: {:?} over budget", start.elapsed()))?;
        let want = expected_q(n as usize - 1, 2)?;
        ensure(single_generator(&ann) == vec![want.clone()], format!("n = {n}: {:?} != ({want})", single_generator(&ann)))?;
        if n == 2 {
            let bracket = Ideal::parse(ring.ring(), &["x", "y", "z"]).map_err(err)?.frobenius_power(2).map_err(err)?;
            let power = class.power_ideal(2);
            ensure(bracket.equals(&power, None).map_err(err)?, "(x,y,z)^[2] differs from the class denominator ideal")?;
        }
    }
    Ok(())
}

fn c9_ptor2() -> Outcome {
    let ring = Ring::new(&["x", "y", "z"], CoefficientDomain::Integer).map_err(err)?;
    let parse = |v: &[&str]| v.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>().map_err(err);
    let f = parse(&["x", "y", "z"])?;
    let g = parse(&["y*z", "z*x", "-2*x*y"])?;
    for domain in [CoefficientDomain::Rational, CoefficientDomain::PrimeField(5)] {
        ensure(conjecture_membership_check(&f, &g, 3, 1, 2, domain).map_err(err)?, format!("fails over {domain}"))?;
    }
    let report = run_scenario("ptor2-theorem", &Params::default()).map_err(err)?;
    ensure(report.passed, "ptor2 scenario fails")?;
    ensure(report.notes.iter().any(|n| n.contains("ZZ")), "report does not flag the integer gap")
}

fn c10_hartshorne() -> Outcome {
    let ring = quotient(&["w", "x", "y", "z"], CoefficientDomain::Rational, &["w*x - y*z"])?;
    for n in 0..=4u32 {
        let class = CechClass::parse(&ring, &["x", "y"], n + 1, &format!("y^{n}*z^{n}")).map_err(err)?;
        for v in ["w", "x", "y", "z"] {
            let killed = class.multiply(&ring.ring().var(v).map_err(err)?).map_err(err)?;
            match is_zero_up_to(&killed, 2).map_err(err)? {
                VanishingVerdict::ZeroAt { k } if k <= 2 => {
                    ensure(verify_zero_at(&killed, k).map_err(err)?, format!("n = {n}, {v}: witness k = {k} fails"))?
                }
                other => return Err(format!("n = {n}, {v}: {other:?}")),
            }
        }
    }
    Ok(())
}

fn c11_katzman() -> Outcome {
    let ring = Ring::new(&["s", "t", "u", "v", "x", "y"], CoefficientDomain::Integer).map_err(err)?;
    let lhs = ring.parse("s*u^2*x^2 - (s + t)*u*x*v*y + t*v^2*y^2").map_err(err)?;
    let rhs = ring.parse("(s*u*x - t*v*y)*(u*x - v*y)").map_err(err)?;
    ensure(lhs == rhs, "sides differ")?;
    let points: [[i64; 6]; 4] = [[1, 2, 3, 4, 5, 6], [-3, 7, 0, 2, -1, 5], [9, -4, 2, -6, 3, 1], [2, 2, 2, 2, 2, 2]];
    for pt in points {
        let [s, t, u, v, x, y] = pt.map(i128::from);
        let l = s * u * u * x * x - (s + t) * u * x * v * y + t * v * v * y * y;
        let r = (s * u * x - t * v * y) * (u * x - v * y);
        ensure(l == r, format!("sides differ at {pt:?}"))?;
        let assignment: Vec<(&str, Polynomial)> =
            ["s", "t", "u", "v", "x", "y"].into_iter().zip(pt).map(|(n, c)| (n, ring.int(c))).collect();
        let value = lhs.substitute(&assignment).map_err(err)?;
        ensure(value == ring.int(i64::try_from(l).map_err(err)?), format!("library value at {pt:?}"))?;
    }
    let report = run_scenario("katzman-factorization", &Params::default()).map_err(err)?;
    ensure(report.passed && reverify(&report).map_err(err)?, "katzman scenario")
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { failure_persistence: None, ..Config::with_cases(cases) };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn c12_properties() -> Outcome {
    runner(100).run(&gb_cases(), gb_case).map_err(|e| format!("groebner: {e}"))?;
    runner(100).run(&membership_cases(), membership_case).map_err(|e| format!("membership: {e}"))?;
    runner(50).run(&colon_cases(), colon_case).map_err(|e| format!("colon: {e}"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("Toeplitz recursion equals determinant", 5, c1_toeplitz_equality),
        ("generating function", 5, c2_generating_function),
        ("complex roots", 5, c3_complex_roots),
        ("factor census over GF(5)", 30, c4_census),
        ("p-torsion certificates", 10, c5_torsion),
        ("ring A colon identity", 60, c6_ring_a),
        ("ring B colon identity", 60, c7_ring_b),
        ("ring S annihilator and Frobenius witness", 120, c8_ring_s),
        ("ptor2 instance", 30, c9_ptor2),
        ("Hartshorne socle classes", 30, c10_hartshorne),
        ("Katzman factorization", 5, c11_katzman),
        ("property suites", 60, c12_properties),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed < Duration::from_secs(*limit), format!("took {elapsed:.2?}, limit {limit} s"))
        });
        match result {
            Ok(()) => {
                let _ = writeln!(std::io::stderr(), "criterion {}: PASS  {name} ({elapsed:.2?})", i + 1);
            }
            Err(e) => {
                let _ = writeln!(std::io::stderr(), "criterion {}: FAIL  {name}: {e}", i + 1);
                failures.push(format!("{}: {e}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
