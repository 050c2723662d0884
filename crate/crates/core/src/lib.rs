//! Non-backtracking graphs and non-backtracking Laplacians of simple graphs.
//!
//! The crate builds the non-backtracking (NB) digraph of a simple graph, its
//! matrices `B`, `D`, `A = B` and the reversal pairing `P`, and the random-walk
//! Laplacian `L = Id - D^-1 A` of the NB digraph. Spectra are computed on two
//! tracks: exact rational characteristic polynomials for every equality
//! decision, and numerically polished eigenvalues / eigenvectors for geometry.
//!
//! Modules map onto the subsystems:
//!
//! * [`graph`], [`graph6`], [`enumerate`], [`iso`]: simple graphs, parsing,
//!   generators, exhaustive enumeration and isomorphism search.
//! * [`nb`], [`counting`]: NB graph construction and the counting results.
//! * [`linalg`]: exact rational matrices, polynomials, eigen- and singular values.
//! * [`spectral`]: the NB Laplacian and its eigenfunction properties.
//! * [`partite`]: circularly k-partite detection.
//! * [`bounds`]: spectral gaps, petal spectra, cycle signatures, independence
//!   numbers and inertia-type bounds.
//! * [`cospectral`]: cospectrality scans over the enumeration.
//! * [`verify`], [`report`], [`plot`], [`cli`]: the named check suite and output.

pub mod bounds;
pub mod cli;
pub mod cospectral;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod linalg;
pub mod nb;
pub mod partite;
pub mod plot;
pub mod report;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use nb::NbGraph;

/// Default absolute tolerance on eigenvalue positions.
pub const DEFAULT_TOL: f64 = 1e-8;
