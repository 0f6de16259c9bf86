//! Exact-arithmetic verification toolkit for finite group actions on rational
//! surfaces with fixed points.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: arbitrary-precision rationals, cyclotomic numbers in canonical
//!   (minimal conductor) form, multivariate polynomials over them, and exact
//!   linear algebra.
//! * [`lattice`]: the Picard lattice of a del Pezzo surface in its blow-up
//!   basis, enumeration of exceptional classes and roots, Weyl groups, and
//!   invariant sublattice ranks.
//! * [`groups`]: finite matrix/permutation/isometry groups, closure from
//!   generators, structural fingerprints, and identification against a small
//!   catalog of named groups.
//! * [`surfaces`]: concrete models (plane, cubic surfaces, intersections of
//!   two quadrics, weighted quartic double planes, degree 5 and 6 surfaces)
//!   together with their automorphisms and fixed loci.
//! * [`lefschetz`]: trace bookkeeping tying fixed loci to lattice traces and
//!   the minimality test.
//! * [`conic`]: conic bundle group data and the classification of the finite
//!   groups arising there.
//! * [`verify`]: the named verification pipelines driven by the CLI, each
//!   producing a deterministic report.

pub mod conic;
pub mod exact;
pub mod groups;
pub mod lattice;
pub mod lefschetz;
pub mod surfaces;
pub mod verify;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic domain error: {0}")]
    Domain(String),
    #[error("group not in catalog: {0}")]
    UnknownGroup(String),
    #[error("ambiguous catalog match: {0}")]
    AmbiguousGroup(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("verification internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
