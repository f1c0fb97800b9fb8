//! Text formats: lattice listings, count tables, and certificates.
//!
//! Everything is plain ASCII with explicit decimal integers, so any of
//! it can be audited by eye or re-checked by an independent script.
//! Writers are deterministic: the same data yields the same bytes.

pub mod certificate;
pub mod listing;
pub mod tables;

pub use certificate::{parse_certificate, render_certificate, CertificateFileError};
pub use listing::{parse_listing, render_listing, ListingError};
pub use tables::{ingest_external, parse_count_table, render_count_table, TableFileError};
