//! Exact Castelnuovo-Mumford regularity of graph edge ideals.
//!
//! Regularity is computed through the Hochster formula: the maximum `j` such
//! that the independence complex of some induced subgraph has nonzero reduced
//! homology in degree `j - 1` over a prime field.

pub mod canon;
pub mod catalog;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod io;
pub mod regularity;
pub mod suites;
pub mod transforms;

pub use canon::{canon, canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use homology::{reduced_homology, HomologyProfile, PrimeField};
pub use regularity::{regularity, Engine, RegularityCertificate};
