//! Exact lattice-point enumeration for lattice-face polytopes.
//!
//! The crate decides the lattice-face property, evaluates the Ehrhart
//! polynomial of such a polytope from the volumes of its successive
//! projections, materializes the signed permutation decomposition of the
//! nonnegative part of a simplex in general position, and checks every
//! closed form against brute-force lattice scans. All arithmetic is exact.

pub mod bernoulli;
pub mod decomp;
pub mod ehrhart;
pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod latticeface;
pub mod perm;
pub mod simplex;

pub use error::{Error, Result};
