use super::vertex_set::bits;
use super::{check_n, check_vertex, VertexSet};
use crate::error::{Error, Result};

/// A simple undirected graph on `0..n`, adjacency stored as one bitset row
/// per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n)?;
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v])
    }

    /// Raw adjacency row of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// The subgraph keeping only edges inside `s`. Labels are unchanged.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let m = s.bits();
        let adj = (0..self.n)
            .map(|v| if s.contains(v) { self.adj[v] & m } else { 0 })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Relabels the vertices of `s` to `0..|s|` in ascending order, dropping
    /// everything else. Returns the new graph and the old label of each new
    /// vertex.
    pub fn compact(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut adj = vec![0u64; old.len()];
        for (i, &v) in old.iter().enumerate() {
            for w in bits(self.adj[v] & s.bits()) {
                adj[i] |= 1u64 << new_of[w];
            }
        }
        (Graph { n: old.len(), adj }, old)
    }

    /// Sum of squared degrees.
    pub fn degree_power_sum(&self) -> u64 {
        self.adj.iter().map(|r| (r.count_ones() as u64).pow(2)).sum()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            n: self.n,
            adj: self.adj.clone(),
        }
    }
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Mutable graph under construction.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(GraphBuilder { n, adj: vec![0; n] })
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        if u == v {
            return Err(Error::InvalidPair(u, v));
        }
        Ok(())
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        let fresh = self.adj[u] >> v & 1 == 0;
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(fresh)
    }

    /// Removes `uv`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        let present = self.adj[u] >> v & 1 == 1;
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
        Ok(present)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj,
        }
    }
}
