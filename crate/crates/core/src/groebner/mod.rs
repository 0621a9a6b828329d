//! Buchberger's algorithm over field coefficients and the ideal operations
//! built on it: membership, colon, elimination, intersection, Frobenius
//! powers and quotient-ring normal forms.

mod buchberger;
mod ideal;
mod terms;

pub use buchberger::{
    buchberger, divide_remainder, is_groebner_basis, s_polynomial, GbConfig, GbStats, GroebnerBasis,
};
pub use ideal::{
    divide_exact, membership, membership_monomial_plus_p, residual_mod_p_monomials, Ideal, QuotientRing,
};
