//! Exact verification toolkit for local cohomology constructions: Čech
//! classes and their vanishing, p-torsion certificates, colon and
//! annihilator identities, Frobenius powers and the tridiagonal Toeplitz
//! determinant family `Q_n(s, t)`.

pub mod cohomology;
pub mod error;
pub mod groebner;
pub mod polyring;
pub mod scenarios;
pub mod toeplitz;

pub use error::{Error, Result};
