//! Exact combinatorial machinery for compact toric varieties and their
//! spaces of based rational curves.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in the crate. The crate is
//! `no_std` (with `alloc`): IO, file formats and the command-line surface
//! live in the companion `toric-cli` crate.
//!
//! The main layers, bottom up:
//!
//! * [`lattice`] — integer/rational linear algebra: Hermite and Smith normal
//!   forms, integer kernels, dual lattices, exact linear solving.
//! * [`fan`] — rational polyhedral fans, validity, smoothness, completeness,
//!   multiplicities, face combinatorics, and a catalog of standard fans.
//! * [`divisors`] — the support-function lattice of a fan, its dual, the
//!   ray-evaluation maps, and the derived topological invariants.
//! * [`resolve`] — star subdivision, simplicialization and desingularization
//!   chains, with divisor pullback/pushforward and fiber enumeration.
//! * [`monoid`] — the partial monoid of valid labels, Hilbert bases, simple
//!   labels and positive gradings.
//! * [`qspace`] — connected components and fundamental-group presentations of
//!   labelled configuration spaces.
//! * [`stability`] — stability dimensions of spaces of based holomorphic
//!   maps, for smooth fans and along resolution chains.
//! * [`poly`] / [`maps`] — exact univariate polynomials over Gaussian
//!   rationals and the polynomial model of based holomorphic maps.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod divisors;
pub mod error;
pub mod fan;
pub mod feasibility;
pub mod lattice;
pub mod maps;
pub mod monoid;
pub mod poly;
pub mod qspace;
pub mod resolve;
pub mod stability;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an exact rational vector.
pub type RatVec = alloc::vec::Vec<BigRational>;

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_of(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}
