use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::fp::{factor, FpPoly};
use super::{st_ring, QnFamily};
use crate::error::{Error, Result};
use crate::polyring::{CoefficientDomain, Polynomial};

const NOTE: &str = "finite evidence for n <= n_max, not a proof of infinitely many irreducible factors; \
computed on the dehomogenization s = 1, and s itself never divides Q_n";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    /// Monic irreducible factors of `Q_n(1, t)` over 𝔽_p, sorted by degree.
    pub factors: Vec<String>,
    pub multiplicities: Vec<u32>,
    /// Factors not seen for any smaller n.
    pub new_factors: Vec<String>,
    pub cumulative_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCensus {
    pub p: u64,
    pub n_max: usize,
    pub rows: Vec<CensusRow>,
    pub s_factor_occurs: bool,
    pub note: String,
}

impl FactorCensus {
    pub fn final_count(&self) -> usize {
        self.rows.last().map_or(0, |r| r.cumulative_count)
    }

    pub fn cumulative_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.cumulative_count).collect()
    }

    /// Each factor paired with the first n at which it appears.
    pub fn first_occurrences(&self) -> Vec<(String, usize)> {
        self.rows
            .iter()
            .flat_map(|r| r.new_factors.iter().map(move |f| (f.clone(), r.n)))
            .collect()
    }
}

pub fn factor_census(n_max: usize, p: u64) -> Result<FactorCensus> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let domain = CoefficientDomain::prime_field(p)?;
    let ring = st_ring(domain);
    let mut fam = QnFamily::new(&ring)?;
    let polys: Vec<(usize, Polynomial, bool)> = (1..=n_max)
        .map(|n| {
            let s_divides = fam.get(n).substitute(&[("s", ring.zero())]).unwrap().is_zero();
            (n, fam.dehomogenized(n), s_divides)
        })
        .collect();

    let factor_one = |f: &Polynomial| FpPoly::from_polynomial(f).and_then(|g| factor(&g)).map(|x| x.1);
    #[cfg(not(target_arch = "wasm32"))]
    let factored: Vec<Result<Vec<(FpPoly, u32)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = polys.iter().map(|(_, f, _)| scope.spawn(move || factor_one(f))).collect();
        handles.into_iter().map(|h| h.join().expect("factorization thread")).collect()
    });
    #[cfg(target_arch = "wasm32")]
    let factored: Vec<Result<Vec<(FpPoly, u32)>>> = polys.iter().map(|(_, f, _)| factor_one(f)).collect();

    let mut seen: BTreeSet<FpPoly> = BTreeSet::new();
    let mut rows = Vec::with_capacity(n_max);
    for ((n, _, _), facs) in polys.iter().zip(factored) {
        let facs = facs?;
        let show = |g: &FpPoly| g.to_polynomial(&ring, 1).to_string();
        let mut new_factors = Vec::new();
        for (g, _) in &facs {
            if seen.insert(g.clone()) {
                new_factors.push(show(g));
            }
        }
        rows.push(CensusRow {
            n: *n,
            factors: facs.iter().map(|(g, _)| show(g)).collect(),
            multiplicities: facs.iter().map(|(_, e)| *e).collect(),
            new_factors,
            cumulative_count: seen.len(),
        });
    }
    Ok(FactorCensus {
        p,
        n_max,
        rows,
        s_factor_occurs: polys.iter().any(|(_, _, s)| *s),
        note: NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        let c = factor_census(3, 5).unwrap();
        assert_eq!(c.rows[0].factors, vec!["t"]);
        assert_eq!(c.rows[1].factors, vec!["t + 1", "t + 4"]);
        assert_eq!(c.rows[2].factors, vec!["t", "t^2 + 3"]);
        assert_eq!(c.cumulative_counts(), vec![1, 3, 4]);
        assert_eq!(factor_census(1, 7).unwrap().final_count(), 1);
        assert!(!c.s_factor_occurs);
        assert!(factor_census(0, 5).is_err());
        assert!(factor_census(4, 6).is_err());
    }

    #[test]
    fn first_occurrences_follow_rows() {
        let c = factor_census(4, 5).unwrap();
        let firsts = c.first_occurrences();
        assert_eq!(firsts[0], ("t".to_string(), 1));
        assert_eq!(firsts.len(), c.final_count());
    }
}
