//! Exact equivariant localization and iterated residues.
//!
//! `no_std` with `alloc`. Everything here is pure exact arithmetic; IO,
//! file formats and the command line live in the `equiloc` crate.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod hyperbolicity;
pub mod jet;
pub mod localization;
pub mod residue;
pub mod thom;

pub use algebra::{
    parse_laurent, parse_polynomial, LaurentSeries, Monomial, Polynomial, Rational, Ring, Var,
};
pub use error::{Error, Result};
