use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{same_ring, CoefficientDomain, Polynomial, Ring};

fn q_of(p: u64, e: u32) -> Result<u32> {
    if !crate::polyring::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e < 1 {
        return Err(Error::InvalidExponent("e must be at least 1".into()));
    }
    u32::try_from(p)
        .ok()
        .and_then(|p| p.checked_pow(e))
        .ok_or_else(|| Error::InvalidExponent(format!("{p}^{e} is too large")))
}

fn pairwise_sum(f: &[Polynomial], g: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if f.len() != g.len() || f.is_empty() {
        return Err(Error::IllFormedSyzygy(format!(
            "need equal nonempty lists, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    f.iter().zip(g).map(|(a, b)| a.try_mul(b)).collect()
}

/// `λ_q = Σ (f_i g_i)^q / p` with `q = p^e`. When `Σ f_i g_i` equals `relation`
/// rather than zero, `relation^q` is subtracted first so the division is exact.
pub fn lambda_q(
    f: &[Polynomial],
    g: &[Polynomial],
    p: u64,
    e: u32,
    relation: Option<&Polynomial>,
) -> Result<Polynomial> {
    let q = q_of(p, e)?;
    let products = pairwise_sum(f, g)?;
    let ring = products[0].ring().clone();
    if ring.domain() != CoefficientDomain::Integer {
        return Err(Error::DomainNotSupported { op: "lambda_q", domain: ring.domain().to_string() });
    }
    let sum = products.iter().try_fold(ring.zero(), |acc, x| acc.try_add(x))?;
    let mut powers = products.iter().try_fold(ring.zero(), |acc, x| acc.try_add(&x.pow(q)))?;
    if !sum.is_zero() {
        match relation {
            Some(rel) if same_ring(rel.ring(), &ring) && *rel == sum => {
                powers = &powers - &rel.pow(q);
            }
            _ => return Err(Error::IllFormedSyzygy(format!("Σ f_i g_i = {sum}"))),
        }
    }
    powers.divide_exact_by_integer(p)
}

/// Decides `λ_q (g_1⋯g_n)^k ∈ (g_1^{q+k}, ..., g_n^{q+k})` after moving `λ_q`
/// into `domain`. The inputs live over ℤ and must satisfy `Σ f_i g_i = 0`.
pub fn conjecture_membership_check(
    f: &[Polynomial],
    g: &[Polynomial],
    p: u64,
    e: u32,
    k: u32,
    domain: CoefficientDomain,
) -> Result<bool> {
    if !domain.is_field() {
        return Err(Error::DomainNotSupported { op: "conjecture membership", domain: domain.to_string() });
    }
    let q = q_of(p, e)?;
    let lambda = lambda_q(f, g, p, e, None)?;
    let zring = lambda.ring();
    let target: std::sync::Arc<Ring> = zring.with_domain(domain);
    let lam = lambda.change_ring(&target)?;
    let gs = g.iter().map(|x| x.change_ring(&target)).collect::<Result<Vec<_>>>()?;
    let prod = gs.iter().fold(target.one(), |acc, x| &acc * x);
    let ideal = Ideal::new(&target, gs.iter().map(|x| x.pow(q + k)).collect())?;
    ideal.contains(&(&lam * &prod.pow(k)), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz(vars: &[&str]) -> std::sync::Arc<Ring> {
        Ring::new(vars, CoefficientDomain::Integer).unwrap()
    }

    fn parse_all(r: &std::sync::Arc<Ring>, xs: &[&str]) -> Vec<Polynomial> {
        xs.iter().map(|x| r.parse(x).unwrap()).collect()
    }

    #[test]
    fn hypersurface_lambda() {
        let r = zz(&["u", "v", "w", "x", "y", "z"]);
        let rel = r.parse("u*x + v*y + w*z").unwrap();
        let l = lambda_q(&parse_all(&r, &["u", "v", "w"]), &parse_all(&r, &["x", "y", "z"]), 2, 1, Some(&rel)).unwrap();
        assert_eq!(l, r.parse("-(u*x*v*y + u*x*w*z + v*y*w*z)").unwrap());
        let err = lambda_q(&parse_all(&r, &["u", "v", "w"]), &parse_all(&r, &["x", "y", "z"]), 2, 1, None);
        assert!(matches!(err, Err(Error::IllFormedSyzygy(_))));
    }

    #[test]
    fn syzygy_lambda() {
        let r = zz(&["x", "y", "z"]);
        let f = parse_all(&r, &["x", "y", "z"]);
        let g = parse_all(&r, &["y*z", "z*x", "-2*x*y"]);
        assert_eq!(lambda_q(&f, &g, 3, 1, None).unwrap(), r.parse("-2*x^3*y^3*z^3").unwrap());
        let f2 = parse_all(&r, &["y", "-x"]);
        let g2 = parse_all(&r, &["x", "y"]);
        assert!(lambda_q(&f2, &g2, 3, 1, None).unwrap().is_zero());
        assert!(matches!(lambda_q(&f2, &g2, 4, 1, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn membership_instances() {
        let r = zz(&["x", "y", "z"]);
        let f = parse_all(&r, &["x", "y", "z"]);
        let g = parse_all(&r, &["y*z", "z*x", "-2*x*y"]);
        for d in [CoefficientDomain::Rational, CoefficientDomain::PrimeField(5)] {
            assert!(conjecture_membership_check(&f, &g, 3, 1, 2, d).unwrap());
            assert!(conjecture_membership_check(&f, &g, 3, 1, 0, d).unwrap());
        }
        let f2 = parse_all(&r, &["y", "-x"]);
        let g2 = parse_all(&r, &["x", "y"]);
        assert!(conjecture_membership_check(&f2, &g2, 3, 2, 0, CoefficientDomain::Rational).unwrap());
    }
}
