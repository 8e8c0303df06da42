//! Sparse polynomials over prime fields in degrevlex order.

pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod ring;

pub use monomial::{count_monomials, monomial_compare, monomials_of_degree, Monomial, MAX_VARS};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use polynomial::{poly_arith, ArithOp, Polynomial};
pub use ring::{GradedRing, RingHeader};
