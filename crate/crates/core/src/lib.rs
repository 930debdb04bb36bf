//! Extremal bipartite constructions: finite fields, planar difference sets
//! and their completions, the G^(q,k) graphs, Cayley bipartite graphs, and
//! the supersaturation lower bounds they are measured against.

pub mod bounds;
pub mod diffset;
pub mod error;
pub mod field;
pub mod graph;
pub mod group;
pub mod mors;
pub mod oracle;
pub mod suite;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Side};
