//! The tridiagonal Toeplitz determinants `Q_n(s, t)`: matrices, a cofactor
//! determinant, the three-term recursion, its generating function, numeric
//! roots and factor censuses over 𝔽_p.

mod census;
mod fp;

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use census::{factor_census, CensusRow, FactorCensus};
pub use fp::{factor, factor_univariate_fp, FpPoly};

use crate::error::{Error, Result};
use crate::groebner::divide_exact;
use crate::polyring::{CoefficientDomain, Multigrading, Polynomial, Ring, WeightedDegree};

/// `K[s, t]` over the given coefficient domain.
pub fn st_ring(domain: CoefficientDomain) -> Arc<Ring> {
    Ring::new(&["s", "t"], domain).expect("fixed variable names")
}

/// `t` on the diagonal, `s` directly above and below it.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
}

impl ToeplitzMatrix {
    /// The 0×0 matrix.
    pub fn empty(ring: &Arc<Ring>) -> Self {
        ToeplitzMatrix { ring: ring.clone(), entries: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }
}

/// The n×n matrix `M_n` in `ring`, which must contain `s` and `t`.
pub fn build_matrix(ring: &Arc<Ring>, n: usize) -> Result<ToeplitzMatrix> {
    if n < 1 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let s = ring.var("s")?;
    let t = ring.var("t")?;
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => t.clone(),
                    1 => s.clone(),
                    _ => ring.zero(),
                })
                .collect()
        })
        .collect();
    Ok(ToeplitzMatrix { ring: ring.clone(), entries })
}

/// Determinant by Laplace expansion along the first row. Exponential, only
/// meant as a cross-check for small sizes.
pub fn det_oracle(m: &ToeplitzMatrix) -> Polynomial {
    let rows: Vec<usize> = (0..m.size()).collect();
    let cols = rows.clone();
    laplace(m, &rows, &cols)
}

fn laplace(m: &ToeplitzMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let Some((&r, rest)) = rows.split_first() else {
        return m.ring.one();
    };
    let mut acc = m.ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = &m.entries[r][c];
        if e.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &laplace(m, rest, &minor_cols);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct QnPolynomial {
    pub n: usize,
    pub poly: Polynomial,
}

impl QnPolynomial {
    /// Homogeneous of degree n, even in s, and `Q_n(s, -t) = (-1)^n Q_n(s, t)`.
    pub fn check_invariants(&self) -> Result<bool> {
        let ring = self.poly.ring();
        let homogeneous = self.poly.multidegree(&Multigrading::standard(ring.nvars()))?
            == WeightedDegree::Exactly(vec![self.n as i64]);
        let si = ring.var_index("s")?;
        let even_s = self.poly.terms().all(|(m, _)| m.exponent(si) % 2 == 0);
        let flipped = self.poly.substitute(&[("t", -ring.var("t")?)])?;
        let parity = if self.n % 2 == 0 { flipped == self.poly } else { flipped == -&self.poly };
        Ok(homogeneous && even_s && parity)
    }
}

/// Memoized `Q_0 = 1, Q_1 = t, Q_{n+2} = t Q_{n+1} - s^2 Q_n`.
#[derive(Clone, Debug)]
pub struct QnFamily {
    ring: Arc<Ring>,
    memo: Vec<Polynomial>,
}

impl QnFamily {
    pub fn new(ring: &Arc<Ring>) -> Result<Self> {
        let t = ring.var("t")?;
        ring.var_index("s")?;
        Ok(QnFamily { ring: ring.clone(), memo: vec![ring.one(), t] })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn get(&mut self, n: usize) -> &Polynomial {
        if self.memo.len() <= n {
            let t = self.ring.var("t").unwrap();
            let s2 = self.ring.var("s").unwrap().pow(2);
            while self.memo.len() <= n {
                let k = self.memo.len();
                let next = &(&t * &self.memo[k - 1]) - &(&s2 * &self.memo[k - 2]);
                self.memo.push(next);
            }
        }
        &self.memo[n]
    }

    pub fn qn(&mut self, n: usize) -> QnPolynomial {
        QnPolynomial { n, poly: self.get(n).clone() }
    }

    /// `Q_n(1, t)`, still as an element of the same ring.
    pub fn dehomogenized(&mut self, n: usize) -> Polynomial {
        let one = self.ring.one();
        self.get(n).substitute(&[("s", one)]).unwrap()
    }
}

pub fn qn_recursive(ring: &Arc<Ring>, n: usize) -> Result<QnPolynomial> {
    Ok(QnFamily::new(ring)?.qn(n))
}

/// Checks `(Σ_{n≤N} Q_n z^n)(1 - t z + s^2 z^2) ≡ 1 mod z^{N+1}`.
pub fn generating_check(ring: &Arc<Ring>, order: usize) -> Result<bool> {
    let mut fam = QnFamily::new(ring)?;
    let seq: Vec<Polynomial> = (0..=order).map(|n| fam.get(n).clone()).collect();
    generating_check_with(&seq, order)
}

/// The generating-function identity for an arbitrary candidate sequence
/// `seq[0..=order]`.
pub fn generating_check_with(seq: &[Polynomial], order: usize) -> Result<bool> {
    if order < 2 {
        return Err(Error::InvalidArgument("truncation order must be at least 2".into()));
    }
    if seq.len() <= order {
        return Err(Error::InvalidArgument(format!(
            "need {} terms, got {}",
            order + 1,
            seq.len()
        )));
    }
    let base = seq[0].ring();
    let zname = base.fresh_name("z");
    let ring = base.with_extra_var(&zname)?;
    let zi = ring.var_index(&zname)?;
    let z = ring.var(&zname)?;
    let s = ring.var("s")?;
    let t = ring.var("t")?;
    let mut series = ring.zero();
    for (n, q) in seq.iter().take(order + 1).enumerate() {
        series = &series + &(&q.change_ring(&ring)? * &z.pow(n as u32));
    }
    let denom = &(&ring.one() - &(&t * &z)) + &(&s.pow(2) * &z.pow(2));
    let product = &series * &denom;
    let truncated = Polynomial::from_terms(
        &ring,
        product
            .terms()
            .filter(|(m, _)| m.exponent(zi) as usize <= order)
            .map(|(m, c)| (m.clone(), c.clone())),
    );
    Ok(truncated == ring.one())
}

/// Largest `|Q_n(1, 2cos(rπ/(n+1)))|` over `r = 1..=n`.
pub fn root_residual(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let ring = st_ring(CoefficientDomain::Rational);
    let q = qn_recursive(&ring, n)?.poly;
    let mut worst = 0f64;
    for r in 1..=n {
        let root = 2.0 * (r as f64 * PI / (n as f64 + 1.0)).cos();
        worst = worst.max(q.eval_f64(&[1.0, root])?.abs());
    }
    Ok(worst)
}

pub fn roots_numeric_check(n: usize, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    Ok(root_residual(n)? < tol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderStep {
    pub m: usize,
    pub n: usize,
    pub divides: bool,
}

/// For every pair `m | n ≤ n_max`, whether `Q_{m-1}(1,t)` divides `Q_{n-1}(1,t)`.
pub fn divisibility_ladder(domain: CoefficientDomain, n_max: usize) -> Result<Vec<LadderStep>> {
    if !domain.is_field() {
        return Err(Error::DomainNotSupported { op: "divisibility ladder", domain: domain.to_string() });
    }
    let ring = st_ring(domain);
    let mut fam = QnFamily::new(&ring)?;
    let deh: Vec<Polynomial> = (0..n_max).map(|k| fam.dehomogenized(k)).collect();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in (1..=n).filter(|m| n % m == 0) {
            let divides = divide_exact(&deh[n - 1], &deh[m - 1])?.is_some();
            out.push(LadderStep { m, n, divides });
        }
    }
    Ok(out)
}
