//! Domination and saturation of small graphs.

pub mod bounds;
pub mod canon;
pub mod cli;
pub mod connectivity;
pub mod constructions;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod predicates;
pub mod search;
pub mod verify;

pub use graph::{Edge, Graph, GraphError, VertexSet};
