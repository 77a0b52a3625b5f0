//! Exact computations with monomial ideals over the rationals: Hilbert
//! functions, lex-segment ideals, saturation, Gotzmann data, generic initial
//! ideals and graded local cohomology tables.

pub mod cohomology;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod lab;
pub mod lex;
pub mod linalg;
pub mod parse;
pub mod ring;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use ring::{Monomial, Polynomial, RingSpec, TermOrder};
