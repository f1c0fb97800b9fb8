//! latwork is a workbench for finite lattices at desk scale.
//!
//! It provides four layers that build on each other:
//!
//! * exact lattice representation and structural predicates
//!   ([`poset`], [`lattice`], [`canon`], [`props`]);
//! * composition and decomposition along vertical sums and vertical
//!   2-sums ([`compose`]);
//! * exhaustive unlabeled enumeration by family, with canonical-form
//!   rejection ([`enumerate`], [`table`]);
//! * an exact-arithmetic bounds engine that turns count tables into
//!   linear recurrences, brackets their dominant roots, and emits
//!   verifiable growth certificates ([`recurrence`], [`root`],
//!   [`certify`]).
//!
//! Everything is exact: counts are big integers, roots are bracketed by
//! rationals, and certificates reduce to integer comparisons that
//! [`certify::verify_certificate`] re-checks from scratch.
//!
//! All operations are pure functions over immutable values, so they can
//! be called from multiple threads freely.

pub mod canon;
pub mod certify;
pub mod compose;
pub mod dataset;
pub mod enumerate;
pub mod io;
pub mod lattice;
pub mod poset;
pub mod props;
pub mod ratio;
pub mod recurrence;
pub mod root;
pub mod suite;
pub mod table;

#[cfg(test)]
pub(crate) mod testutil;

pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use lattice::{as_lattice, Lattice, LatticeError};
pub use poset::{build_poset, Poset, PosetError};
