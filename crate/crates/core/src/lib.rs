//! Exact induced-subgraph counting under graph properties.
//!
//! The crate counts `k`-vertex induced subgraphs satisfying a property,
//! computes the homomorphism-basis coefficients behind those counts, runs the
//! gadget constructions that transfer hardness between bipartite and plain
//! properties, and classifies hereditary properties given by finite
//! forbidden sets. Everything is exact and checked against brute force at
//! small scale.

pub mod error;
pub mod graphs;
pub mod hardness_lab;
pub mod homomorphisms;
pub mod io;
pub mod motif_basis;
pub mod properties;

pub use error::{Caps, Error, Result};
pub use graphs::{BipartiteGraph, BlockPartition, CanonicalForm, Graph};
pub use homomorphisms::{Colouring, ConsistentColouring, Count};
pub use properties::{BipartitePropertyOracle, ForbiddenSet, ImplantSpec, PropertyOracle};
