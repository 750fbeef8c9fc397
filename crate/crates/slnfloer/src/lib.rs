//! Exact computations around sl(n)-like knot Floer homology.
//!
//! The crate builds the chain complexes involved (knot Floer master
//! complexes, their `CFK_n` quotients, Khovanov-Rozansky cubes for braid
//! closures) and computes their graded homology exactly over the rationals.
//! A decategorified layer evaluates HOMFLY-PT polynomials by skein
//! recursion, and a small harness compares Poincare polynomials for
//! compatibility with a spectral sequence of fixed degree.
//!
//! The crate is `no_std` with `alloc`; the default `std` feature only adds
//! parallel evaluation of independent graded pieces.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod complex;
pub mod error;
pub mod hfk;
pub mod kr;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod sscheck;

pub use error::{Error, Result};
