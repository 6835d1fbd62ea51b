//! Free Gelfand-Dorfman-Novikov superalgebras over the rationals.
//!
//! The crate computes canonical normal forms in the supertableau basis by two
//! independent routes and verifies structural claims about these algebras at
//! bounded degree with exact arithmetic:
//!
//! * [`term`] / [`parse`]: product trees over a graded alphabet, root
//!   numbers, and the textual grammar;
//! * [`element`]: rational linear combinations of terms;
//! * [`tableau`]: the canonical shapes spanning the free algebra;
//! * [`rewrite`]: normal forms by identity-driven rewriting;
//! * [`diff`]: the free associative differential supercommutative algebra;
//! * [`embed`]: the embedding into [`diff`] and the normal form it induces,
//!   plus basis enumeration;
//! * [`span`] / [`checks`]: exact rational span arithmetic and the
//!   bounded-degree verification suites.

pub mod alphabet;
pub mod checks;
pub mod diff;
pub mod element;
pub mod embed;
pub mod parse;
pub mod rewrite;
pub mod span;
pub mod tableau;
pub mod term;

pub use alphabet::{Alphabet, AlphabetError, Gen, Parity, Sign};
pub use element::{GdnElement, Rat};
pub use term::Term;
