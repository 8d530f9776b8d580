//! Exact enumeration of labeled `b`-uniform directed hypergraphs.
//!
//! The generating-function side ([`series`], [`formulas`]) computes acyclic
//! and strongly connected counts as polynomials in the hyperarc-marking
//! variable `y`. The [`oracle`] enumerates every dihypergraph on small node
//! sets and classifies it, and [`harness`] compares the two.
//!
//! All algebra is generic over an exact [`Scalar`] ring; the aliases below
//! fix arbitrary-precision integers, which is what every pipeline uses.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod formulas;
pub mod harness;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use formulas::{CountSeq, Family, Method};
pub use poly::Poly;
pub use scalar::Scalar;
pub use series::{Egf, Hgf};

pub use num_bigint::BigInt;

pub type YPoly = Poly<BigInt>;
pub type EgfSeries = Egf<BigInt>;
/// Graded-form hypergraphic generating function.
pub type GradedSeries = Hgf<BigInt>;
pub type CountSequence = CountSeq<BigInt>;
