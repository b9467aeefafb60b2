//! Exact sparse multivariate polynomials.

mod monomial;
mod parse;
mod point;
mod polynomial;

pub use monomial::{Monomial, PartialMultiset, TermOrder};
pub use parse::{format_polynomial, parse_polynomial};
pub use point::Point;
pub use polynomial::Polynomial;
pub(crate) use polynomial::power_table;
