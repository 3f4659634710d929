//! Exact polynomial and truncated Laurent series arithmetic.

mod laurent;
mod monomial;
mod parse;
mod poly;
mod ring;
mod symmetric;
pub(crate) mod terms;
mod var;

pub use laurent::{LaurentSeries, Window};
pub use monomial::Monomial;
pub use parse::{parse_laurent, parse_laurent_in, parse_polynomial, parse_polynomial_in};
pub use poly::Polynomial;
pub use ring::Ring;
pub use symmetric::{elementary, expand_elementary, swap_weights, symmetric_reduce};
pub use var::{Alphabet, Var};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// `n` as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `a/b` as a [`Rational`]. Panics if `b == 0`.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}
