//! Exact computation of the Albanese variety and Albanese fiber of
//! hyperelliptic varieties `X = A/G`, where `A = V/Λ` is an abelian variety
//! given by rational lattice data and `G` a finite group of affine
//! automorphisms acting freely and not only by translations.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals, and
//! cyclotomic fields for character sums).
//!
//! ```
//! use albanese_core::analysis::analyze;
//! use albanese_core::catalog;
//!
//! let datum = catalog::entry("z4-threefold")?.input().to_datum()?;
//! let a = analyze(&datum, true)?;
//! assert_eq!(a.albanese.q, 1);
//! assert_eq!(a.albanese.subgroup_h_labels, ["e", "g^2"]);
//! assert_eq!(a.invariants.canonical_order, 4);
//! # Ok::<(), albanese_core::Error>(())
//! ```

pub mod action;
pub mod albanese;
pub mod analysis;
pub mod catalog;
pub mod cyclotomic;
pub mod document;
pub mod error;
pub mod exactlin;
pub mod invariants;
pub mod oracle;
pub mod report;
pub mod serde_exact;
pub mod torus;

pub use error::{Error, ErrorClass, Result};
