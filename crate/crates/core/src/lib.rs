//! Exact tools for extremal problems on graphs and 3-uniform hypergraphs
//! with forbidden generalized triangles and bounded matching number.
//!
//! The crate bundles bitset host types, pattern detectors, the extremal
//! constructions, closed-form bound evaluators, an exact branch-and-bound
//! search with isomorph rejection, and a small campaign runner that checks
//! computed values against the closed forms.

pub mod campaign;
pub mod canon;
pub mod constructions;
pub mod detectors;
pub mod error;
pub mod formulas;
pub mod model;
pub mod search;

pub use error::{Error, Result};
pub use formulas::{BoundValue, Source};
pub use model::{ColoredSystem, Graph, GraphBuilder, Triple, TripleSystem, UniformEdges, VertexSet};
pub use search::{Pattern, SearchConfig, SearchProblem, SearchResult, Witness};
