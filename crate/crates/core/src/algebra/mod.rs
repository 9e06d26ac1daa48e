//! Exact coefficients, monomials and orders, rings and sparse polynomials.

pub mod coeff;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use coeff::{Coeff, Field, Rational};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::{format_monomial, Polynomial, Term};
pub use ring::Ring;
