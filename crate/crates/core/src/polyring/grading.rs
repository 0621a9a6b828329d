use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A ℤ^d-valued weight for every variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigrading {
    weights: Vec<Vec<i64>>,
}

/// Result of a homogeneity query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightedDegree {
    /// The zero polynomial, homogeneous of every degree.
    Any,
    Exactly(Vec<i64>),
    Inhomogeneous,
}

impl Multigrading {
    pub fn new(weights: Vec<Vec<i64>>) -> Result<Self> {
        let rank = weights.first().map_or(0, Vec::len);
        for w in &weights {
            if w.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: w.len() });
            }
        }
        Ok(Multigrading { weights })
    }

    /// Standard ℕ-grading with every variable of degree one.
    pub fn standard(nvars: usize) -> Self {
        Multigrading { weights: vec![vec![1]; nvars] }
    }

    pub fn rank(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, var: usize) -> &[i64] {
        &self.weights[var]
    }

    pub(crate) fn check_vars(&self, nvars: usize) -> Result<()> {
        if self.weights.len() != nvars {
            return Err(Error::RankMismatch { expected: nvars, found: self.weights.len() });
        }
        Ok(())
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<i64> {
        let mut d = vec![0i64; self.rank()];
        for (w, &e) in self.weights.iter().zip(m.exponents()) {
            for (acc, wi) in d.iter_mut().zip(w) {
                *acc += wi * e as i64;
            }
        }
        d
    }

    /// Every monomial whose degree is `target`.
    ///
    /// Needs a positive functional: a small nonnegative combination of the
    /// grading coordinates that gives every variable positive weight. That
    /// bounds the search; `None` means no such functional was found.
    pub fn monomials_of_degree(&self, target: &[i64]) -> Option<Vec<Monomial>> {
        if target.len() != self.rank() {
            return None;
        }
        let functional = self.positive_functional()?;
        let scalar = |w: &[i64]| -> i64 { w.iter().zip(&functional).map(|(a, b)| a * b).sum() };
        let budget = scalar(target);
        if budget < 0 {
            return Some(Vec::new());
        }
        let var_cost: Vec<i64> = self.weights.iter().map(|w| scalar(w)).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.search(0, budget, &var_cost, target, &mut exps, &mut out);
        Some(out)
    }

    fn search(
        &self,
        var: usize,
        budget: i64,
        cost: &[i64],
        target: &[i64],
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if var == exps.len() {
            let m = Monomial::from_exponents(exps);
            if budget == 0 && self.degree_of(&m) == target {
                out.push(m);
            }
            return;
        }
        let max = budget / cost[var];
        for e in 0..=max {
            exps[var] = e as u32;
            self.search(var + 1, budget - e * cost[var], cost, target, exps, out);
        }
        exps[var] = 0;
    }

    fn positive_functional(&self) -> Option<Vec<i64>> {
        let d = self.rank();
        if d == 0 {
            return None;
        }
        // coefficients in 0..=3 on each coordinate, smallest first
        let total = 4usize.pow(d as u32);
        let mut candidates: Vec<Vec<i64>> = (1..total)
            .map(|mut code| {
                (0..d)
                    .map(|_| {
                        let c = (code % 4) as i64;
                        code /= 4;
                        c
                    })
                    .collect()
            })
            .collect();
        candidates.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
        candidates.into_iter().find(|f| {
            self.weights
                .iter()
                .all(|w| w.iter().zip(f).map(|(a, b)| a * b).sum::<i64>() > 0)
        })
    }
}
