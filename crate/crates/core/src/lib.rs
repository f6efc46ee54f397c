//! Numerical laboratory for simple random walks on finite regular graphs.
//!
//! The crate builds d-regular graphs (explicit Cayley expanders, random
//! regular graphs, deterministic fixtures), evolves walk distributions
//! exactly, measures mixing profiles (total variation, Hellinger, entropy),
//! and verifies the quantitative inequalities relating entropy production,
//! spectral gaps and cutoff as testable numerical statements.

pub mod analysis;
pub mod dist;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
mod kahan;
pub mod matching;
pub mod numfmt;
pub mod plot;
pub mod spectral;
pub mod tree;
pub mod verify;
pub mod walk;

pub use dist::Dist;
pub use error::{Error, Result};
pub use graph::{Graph, RawGraph, ValidationReport};
