use std::fmt;

use serde::{Deserialize, Serialize};

use super::vertex_set::bits;
use super::{check_n, check_vertex, Graph, GraphBuilder, VertexSet};
use crate::error::{Error, Result};

/// A 3-element vertex set, stored sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple([usize; 3]);

impl Triple {
    /// Sorts the three vertices. Fails when two coincide.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::InvalidParameter(format!(
                "triple {{{a}, {b}, {c}}} has a repeated vertex"
            )));
        }
        Ok(Triple(v))
    }

    pub fn vertices(self) -> [usize; 3] {
        self.0
    }

    pub fn mask(self) -> u64 {
        (1u64 << self.0[0]) | (1u64 << self.0[1]) | (1u64 << self.0[2])
    }

    pub fn contains(self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// The three `(pair, remaining vertex)` splits of this triple.
    pub fn splits(self) -> [((usize, usize), usize); 3] {
        let [a, b, c] = self.0;
        [((a, b), c), ((a, c), b), ((b, c), a)]
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A 3-uniform hypergraph on `0..n`.
///
/// Edges are kept twice: as a sorted list for deterministic iteration, and
/// as per-pair coneighborhood bitsets so codegree queries are O(1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TripleSystem {
    n: usize,
    edges: Vec<Triple>,
    co: Vec<u64>,
}

impl TripleSystem {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(TripleSystem {
            n,
            edges: Vec::new(),
            co: vec![0; n * n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        check_n(n)?;
        let mut list = Vec::new();
        for [a, b, c] in edges {
            for v in [a, b, c] {
                check_vertex(v, n)?;
            }
            list.push(Triple::new(a, b, c)?);
        }
        Self::from_triples(n, list)
    }

    pub fn from_triples(n: usize, mut edges: Vec<Triple>) -> Result<Self> {
        check_n(n)?;
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0.to_vec()));
        }
        let mut co = vec![0u64; n * n];
        for t in &edges {
            let c = t.0[2];
            if c >= n {
                return Err(Error::InvalidVertex { vertex: c, n });
            }
            for ((x, y), z) in t.splits() {
                co[x * n + y] |= 1u64 << z;
                co[y * n + x] |= 1u64 << z;
            }
        }
        Ok(TripleSystem { n, edges, co })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `|H|`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        a < self.n && b < self.n && c < self.n && self.co[a * self.n + b] >> c & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.edges.iter().filter(|t| t.contains(u)).count()
    }

    /// `deg(u, v)`; zero when `u == v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.co_bits(u, v).count_ones() as usize
    }

    pub(crate) fn co_bits(&self, u: usize, v: usize) -> u64 {
        self.co[u * self.n + v]
    }

    /// `N(u, v) = { w : uvw ∈ H }`.
    pub fn coneighborhood(&self, u: usize, v: usize) -> Result<VertexSet> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        if u == v {
            return Err(Error::InvalidPair(u, v));
        }
        Ok(VertexSet::from_bits(self.co_bits(u, v)))
    }

    /// The link graph `L(u)`: pairs `vw` with `uvw ∈ H`.
    pub fn link(&self, u: usize) -> Result<Graph> {
        self.link_restricted(u, VertexSet::full(self.n))
    }

    /// `L(u, W)`: link edges with both endpoints in `w`.
    pub fn link_restricted(&self, u: usize, w: VertexSet) -> Result<Graph> {
        check_vertex(u, self.n)?;
        let mut g = GraphBuilder::new(self.n)?;
        for v in w.iter().filter(|&v| v < self.n && v != u) {
            for x in bits(self.co_bits(u, v) & w.bits()) {
                if v < x {
                    g.add_edge(v, x)?;
                }
            }
        }
        Ok(g.build())
    }

    /// `H[S]`: edges with all three vertices in `s`, original labels kept.
    pub fn induced(&self, s: VertexSet) -> TripleSystem {
        self.filtered(|t| t.mask() & !s.bits() == 0)
    }

    /// `H[S, S']`: edges meeting both `s` and `s2`.
    pub fn cross_subgraph(&self, s: VertexSet, s2: VertexSet) -> Result<TripleSystem> {
        if !s.is_disjoint(s2) {
            return Err(Error::InvalidPartition);
        }
        Ok(self.filtered(|t| t.mask() & s.bits() != 0 && t.mask() & s2.bits() != 0))
    }

    fn filtered(&self, keep: impl Fn(&Triple) -> bool) -> TripleSystem {
        let edges: Vec<Triple> = self.edges.iter().copied().filter(|t| keep(t)).collect();
        TripleSystem::from_triples(self.n, edges).expect("subset of a valid system")
    }

    /// Relabels `s` to `0..|s|` ascending and drops edges leaving `s`.
    pub fn compact(&self, s: VertexSet) -> (TripleSystem, Vec<usize>) {
        let old: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|t| t.mask() & !s.bits() == 0)
            .map(|t| {
                let [a, b, c] = t.0;
                Triple::new(new_of[a], new_of[b], new_of[c]).expect("distinct")
            })
            .collect();
        (
            TripleSystem::from_triples(old.len(), edges).expect("valid relabeling"),
            old,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> TripleSystem {
        TripleSystem::from_edges(5, [[0, 1, 2], [0, 1, 3], [2, 3, 4]]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn link_of_small_system() {
        let l = small().link(0).unwrap();
        assert_eq!(l.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3)]);
        assert_eq!(l.edge_count(), small().degree(0));
        assert_eq!(
            small().link(5),
            Err(Error::InvalidVertex { vertex: 5, n: 5 })
        );
    }

    #[test]
    fn restricted_link() {
        let h = small();
        let l = h.link_restricted(0, set(&[1, 3])).unwrap();
        assert_eq!(l.edges().collect::<Vec<_>>(), vec![(1, 3)]);
        assert_eq!(h.link_restricted(2, VertexSet::EMPTY).unwrap().edge_count(), 0);
    }

    #[test]
    fn coneighborhoods() {
        let h = small();
        assert_eq!(h.coneighborhood(0, 1).unwrap(), set(&[2, 3]));
        assert_eq!(h.coneighborhood(0, 4).unwrap(), VertexSet::EMPTY);
        assert_eq!(h.coneighborhood(2, 2), Err(Error::InvalidPair(2, 2)));
        assert_eq!(h.codegree(3, 2), 1);
    }

    #[test]
    fn induced_and_cross() {
        let h = small();
        let ind = h.induced(set(&[0, 1, 2, 3]));
        assert_eq!(ind.edges(), &small().edges()[..2]);
        assert_eq!(h.induced(VertexSet::full(5)), h);
        assert!(h.cross_subgraph(set(&[0]), set(&[4])).unwrap().is_empty());
        assert_eq!(h.cross_subgraph(set(&[0]), set(&[2, 3])).unwrap().len(), 2);
        assert_eq!(
            h.cross_subgraph(set(&[0, 1]), set(&[1])),
            Err(Error::InvalidPartition)
        );
    }

    #[test]
    fn duplicate_and_degenerate_edges_rejected() {
        assert!(matches!(
            TripleSystem::from_edges(4, [[0, 1, 2], [2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(TripleSystem::from_edges(4, [[0, 1, 1]]).is_err());
        assert!(TripleSystem::from_edges(4, [[0, 1, 4]]).is_err());
    }

    #[test]
    fn compact_relabels() {
        let (c, old) = small().compact(set(&[0, 2, 3, 4]));
        assert_eq!(old, vec![0, 2, 3, 4]);
        assert_eq!(c.edges(), &[Triple::new(1, 2, 3).unwrap()]);
    }
}
