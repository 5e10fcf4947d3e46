use super::{check_n, Graph};
use crate::error::{Error, Result};

/// An ordered list of graphs on a shared vertex set; layer `i` holds the
/// edges of color `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredSystem {
    n: usize,
    layers: Vec<Graph>,
}

impl ColoredSystem {
    pub fn new(layers: Vec<Graph>) -> Result<Self> {
        let n = match layers.first() {
            Some(g) => g.n(),
            None => {
                return Err(Error::InvalidParameter(
                    "a colored system needs at least one layer".into(),
                ))
            }
        };
        check_n(n)?;
        if let Some(g) = layers.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidParameter(format!(
                "layer on {} vertices in a system on {n}",
                g.n()
            )));
        }
        Ok(ColoredSystem { n, layers })
    }

    /// `p` copies of the same graph.
    pub fn uniform(g: &Graph, p: usize) -> Result<Self> {
        Self::new(vec![g.clone(); p])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of layers `p`.
    pub fn p(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Graph] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &Graph {
        &self.layers[i]
    }

    /// `Σ e(G_i)`.
    pub fn total_edges(&self) -> usize {
        self.layers.iter().map(Graph::edge_count).sum()
    }
}
