//! Exact polynomial arithmetic in `n` and `z`.
//!
//! Coefficients are rationals over arbitrary-precision integers. Polynomials
//! built from binomials in `n` have fractional monomial coefficients but take
//! integer values at integer arguments.

mod bivariate;
mod special;
mod table;

pub use bivariate::{BivariatePolynomial, PolynomialJson, TermJson};
pub use special::{
    antichain_closed_form, binom, binom_poly, chain_closed_form, hypergeometric_2f1_terminating,
    two_by_m_determinant, Param,
};
pub use table::{StructuredTable, TableEntryJson};
