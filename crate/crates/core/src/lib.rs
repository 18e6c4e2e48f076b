//! Exact combinatorics and commutative algebra of discrete polymatroid bases.
//!
//! A basis is a finite set of monomials of one common degree. This crate decides
//! the exchange properties of such sets, builds products and powers, and works
//! with the toric ideal of the monomial map sending one presentation variable to
//! each basis element (or to each vector of factor elements for a product):
//! exchange and Hibi relations, fiber graphs and their connectivity, minimal
//! generators, Buchberger on pure-difference binomials, Hilbert functions,
//! h-vectors and the bidegrees of Rees-ideal generators.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line front end live in the `polymat` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod basis;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod monomial;
pub mod toric;
pub mod transversal;

mod multiset;

pub use basis::{veronese_type, ExchangeWitness, MonomialBasis, ProductStructure, Profile, SepWitness};
pub use error::{Error, Result};
pub use groebner::{buchberger, certify_generation, GroebnerBasis, MonomialOrder, OrderKind};
pub use invariants::{Bidegree, HilbertData};
pub use monomial::Monomial;
pub use toric::{Binomial, MoveKind, MoveSet, Presentation, YLabel, YMonomial, YVariable};
pub use transversal::TransversalStructure;

/// Default cap on the size of a single fiber (and of one degree's enumeration).
pub const DEFAULT_FIBER_CAP: usize = 1_000_000;
/// Default cap on the number of S-pairs processed by one Buchberger run.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;
/// Default truncation degree for fiber sweeps.
pub const DEFAULT_D_MAX: usize = 3;
