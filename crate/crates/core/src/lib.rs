//! Finite n-ary (polyadic) semigroups.
//!
//! Operation tables over dense carriers `{0, …, order-1}`, the full Dörnte
//! associativity check, neutral elements and reductions to binary
//! semigroups, decision procedures for reducibility and for adjoining a
//! neutral element, W-monoids and their constructions from involutions and
//! bitranslations, and isomorphism-free enumeration of small structures.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, wall-clock
//! timeouts, threads and the command line live in the `polyadic-alg` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assoc;
pub mod canon;
pub mod catalog;
pub mod derive;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod op;
pub mod search;
pub mod wmonoid;

pub use assoc::{check_associativity, check_associativity_with, is_associative, AssocCounterexample};
pub use canon::CanonicalForm;
pub use catalog::{CatalogRecord, RecordKind};
pub use derive::{adjoin_identity, is_reduction, nary_extension, neutral_elements, reduce_via_neutral, restrict, Restriction};
pub use error::{AlgError, Result};
pub use op::{BinaryOpDesc, Caps, FiniteNaryOp, MonoidDesc, Universe};
pub use search::{SearchConfig, SearchOutcome, Verdict};
pub use wmonoid::{Bitranslation, ReesCheck, WMonoidWitness};
