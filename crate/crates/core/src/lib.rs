//! Exact classification of endomorphisms of finite-dimensional vector
//! spaces, carried out at the level of torsion modules over the polynomial
//! ring in one variable.
//!
//! The library provides:
//!
//! - exact arithmetic in prime fields, their finite extensions, and the
//!   rationals ([`field`]);
//! - univariate polynomial arithmetic with complete factorization over
//!   finite fields and desk-scale factorization over the rationals
//!   ([`poly`]);
//! - Smith normal form of the characteristic matrix over the polynomial
//!   ring, with an exact transformation certificate, and the resulting
//!   elementary-divisor classification of matrices up to similarity
//!   ([`torsion`]);
//! - the explicit equivalences splitting an automorphism into primary
//!   components and transporting each component to a nilpotent
//!   endomorphism over the residue field of its ideal ([`equivalence`]);
//! - the Grothendieck-group invariants that make these classifications
//!   additive and complete ([`k0`]);
//! - a computable model of coherent functors on nilpotent modules, with
//!   atoms, membership in the split subcategory, and devissage
//!   ([`coherent`]);
//! - JSON encodings for every exchanged value ([`json`]) and the
//!   verification suite behind the `selftest` command ([`selftest`]).
//!
//! Supported base fields are the computable perfect fields F_p with
//! p < 2^61, their finite extensions presented over the prime field, and
//! the rationals. All values are immutable and all operations are pure,
//! so everything can be shared across threads freely.

pub mod coherent;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod json;
pub mod k0;
pub mod matrix;
pub mod poly;
pub mod selftest;
pub mod torsion;

pub use error::{Error, Result};
