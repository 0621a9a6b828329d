//! Exact sparse multivariate polynomials over ℚ, 𝔽_p and ℤ.

mod domain;
mod grading;
mod monomial;
mod order;
mod parse;
mod poly;

pub use domain::{is_prime, Coeff, CoefficientDomain};
pub(crate) use domain::pow_mod;
pub use grading::{Multigrading, WeightedDegree};
pub use monomial::Monomial;
pub use order::{BaseOrder, MonomialOrder};
pub(crate) use poly::same_ring;
pub use poly::{Polynomial, Ring};
