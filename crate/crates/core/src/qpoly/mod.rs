//! Exact multivariate polynomial arithmetic over the rationals.

mod monomial;
mod order;
mod parse;
mod poly;
mod rational;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use parse::{parse_expr, parse_poly, parse_poly_list, Expr};
pub(crate) use parse::split_top_level;
pub use poly::{PolyDisplay, Polynomial};
pub use rational::Rational;
