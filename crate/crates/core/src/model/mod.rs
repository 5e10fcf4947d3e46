//! Vertex-labeled graphs, 3-graphs and edge-colored graph systems.
//!
//! All vertex sets fit in a single `u64`, so `n <= 64` everywhere. Values
//! are frozen once built; [`GraphBuilder`] is the only mutable form.

mod colored;
pub mod format;
mod graph;
mod triples;
pub(crate) mod vertex_set;

pub use colored::ColoredSystem;
pub use graph::{Graph, GraphBuilder};
pub use triples::{Triple, TripleSystem};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "n = {n} exceeds {MAX_VERTICES}"
        )));
    }
    Ok(())
}

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::InvalidVertex { vertex: v, n });
    }
    Ok(())
}

/// A uniform edge family viewed as vertex bitmasks, the shape the matching
/// routines work on.
pub trait UniformEdges {
    fn vertex_count(&self) -> usize;
    fn uniformity(&self) -> usize;
    /// Edges as vertex bitmasks in canonical (lexicographic) order.
    fn edge_masks(&self) -> Vec<u64>;
}

impl UniformEdges for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn uniformity(&self) -> usize {
        2
    }
    fn edge_masks(&self) -> Vec<u64> {
        self.edges().map(|(u, v)| (1u64 << u) | (1u64 << v)).collect()
    }
}

impl UniformEdges for TripleSystem {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn uniformity(&self) -> usize {
        3
    }
    fn edge_masks(&self) -> Vec<u64> {
        self.edges().iter().map(|t| t.mask()).collect()
    }
}
