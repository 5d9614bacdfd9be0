//! Exact invariants of base rings of transversal polymatroids.
//!
//! Every closed formula exposed here has a brute-force counterpart so the two
//! can be compared: cone facets against enumeration, canonical-module
//! generators against semigroup search, Hilbert functions against lattice
//! point counts.

pub mod canonical;
pub mod combinatorics;
pub mod cone;
mod error;
pub mod exponent;
pub mod hilbert;
pub mod intersect;
pub mod polymatroid;

pub use error::{Error, Result};
pub use exponent::{ExponentSet, ExponentVector};
