//! Generators for the named extremal configurations.
//!
//! Balanced splits put the larger parts first and assign vertices in
//! contiguous ascending blocks, so every output is byte-reproducible. In
//! debug builds each generator checks its edge count against the matching
//! closed form in [`crate::formulas`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::formulas;
use crate::model::{Graph, GraphBuilder, Triple, TripleSystem, VertexSet};

/// Ordered part sizes of a vertex partition of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSpec(Vec<usize>);

impl PartSpec {
    pub fn new(sizes: Vec<usize>) -> Self {
        PartSpec(sizes)
    }

    /// `l` parts of size `⌊n/l⌋` or `⌈n/l⌉`, larger parts first.
    pub fn balanced(n: usize, l: usize) -> Self {
        assert!(l >= 1);
        PartSpec((0..l).map(|i| n / l + usize::from(i < n % l)).collect())
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// The parts as contiguous vertex blocks.
    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&k| {
                let b = (start..start + k).collect();
                start += k;
                b
            })
            .collect()
    }

    fn part_of(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }
}

/// Complete multipartite graph with the given parts.
pub fn multipartite_graph(parts: &PartSpec) -> Result<Graph> {
    let n = parts.n();
    let part = parts.part_of();
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// Complete multipartite 3-graph: all triples meeting three distinct parts.
pub fn multipartite_3graph(parts: &PartSpec) -> Result<TripleSystem> {
    let n = parts.n();
    let part = parts.part_of();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if part[a] == part[b] {
                continue;
            }
            for c in b + 1..n {
                if part[c] != part[a] && part[c] != part[b] {
                    edges.push(Triple::new(a, b, c)?);
                }
            }
        }
    }
    TripleSystem::from_triples(n, edges)
}

/// `T_2(n, l)`.
pub fn turan_graph(n: usize, l: usize) -> Result<Graph> {
    if l < 1 {
        return Err(Error::InvalidParameter("turan graph needs l >= 1".into()));
    }
    let g = multipartite_graph(&PartSpec::balanced(n, l))?;
    debug_assert_eq!(g.edge_count() as u128, formulas::turan_count_2(n as u64, l as u64));
    Ok(g)
}

/// `T_3(n, l)`.
pub fn turan_3graph(n: usize, l: usize) -> Result<TripleSystem> {
    if l < 3 {
        return Err(Error::InvalidParameter("turan 3-graph needs l >= 3".into()));
    }
    let h = multipartite_3graph(&PartSpec::balanced(n, l))?;
    debug_assert!(l != 3 || h.len() as u128 == formulas::frankl_furedi(n as u64).value);
    Ok(h)
}

/// `H_3(n, s)`: complete 3-partite with parts `s`, `⌈(n-s)/2⌉`,
/// `⌊(n-s)/2⌋`; the size-`s` part is `0..s`.
pub fn h3(n: usize, s: usize) -> Result<TripleSystem> {
    if n < 2 || s > n - 2 {
        return Err(Error::InvalidParameter(format!(
            "h3 needs 0 <= s <= n - 2, got n = {n}, s = {s}"
        )));
    }
    let rest = n - s;
    let h = multipartite_3graph(&PartSpec::new(vec![s, rest - rest / 2, rest / 2]))?;
    debug_assert_eq!(h.len() as u128, formulas::h3_count(n as u64, s as u64));
    Ok(h)
}

/// The full star `S_x`: every triple through `x`.
pub fn full_star(n: usize, x: usize) -> Result<TripleSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter("full star needs n >= 3".into()));
    }
    if x >= n {
        return Err(Error::InvalidVertex { vertex: x, n });
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != x).collect();
    let mut edges = Vec::new();
    for (i, &u) in others.iter().enumerate() {
        for &v in &others[i + 1..] {
            edges.push(Triple::new(x, u, v)?);
        }
    }
    let h = TripleSystem::from_triples(n, edges)?;
    debug_assert_eq!(h.len() as u128, formulas::binomial(n as u64 - 1, 2));
    Ok(h)
}

/// `G(n, l, s)`: a part of size `n - s` joined to a copy of
/// `T_2(s, l - 1)`. The `T_2` parts come first, on `0..s`.
pub fn alon_frankl_graph(n: usize, l: usize, s: usize) -> Result<Graph> {
    if l < 2 || s > n {
        return Err(Error::InvalidParameter(format!(
            "G(n, l, s) needs l >= 2 and s <= n, got n = {n}, l = {l}, s = {s}"
        )));
    }
    let mut sizes = PartSpec::balanced(s, l - 1).0;
    sizes.push(n - s);
    let g = multipartite_graph(&PartSpec::new(sizes))?;
    debug_assert_eq!(
        g.edge_count() as u128,
        formulas::g_count(n as u64, l as u64, s as u64)
    );
    Ok(g)
}

/// `K_{⌈n/2⌉, ⌊n/2⌋}`.
pub fn complete_bipartite_balanced(n: usize) -> Result<Graph> {
    turan_graph(n, 2)
}

/// Keeps each edge of `g` independently with probability `p`.
pub fn random_subgraph<R: Rng>(g: &Graph, p: f64, rng: &mut R) -> Graph {
    let kept: Vec<_> = g.edges().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(g.n(), kept).expect("subgraph")
}

/// Keeps each edge of `h` independently with probability `p`.
pub fn random_subsystem<R: Rng>(h: &TripleSystem, p: f64, rng: &mut R) -> TripleSystem {
    let kept: Vec<Triple> = h.edges().iter().copied().filter(|_| rng.gen_bool(p)).collect();
    TripleSystem::from_triples(h.n(), kept).expect("subsystem")
}

/// `G(n, p)` on `0..n`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// Output of [`build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Graph(Graph),
    Triples(TripleSystem),
}

/// Construction names accepted by [`build`], with their parameters.
pub const CONSTRUCTIONS: &[(&str, &str)] = &[
    ("turan", "n l"),
    ("turan3", "n l"),
    ("h3", "n s"),
    ("star", "n x"),
    ("af", "n l s"),
    ("kbip", "n"),
    ("multipartite", "size..."),
    ("multipartite3", "size..."),
];

fn arity(name: &str, params: &[usize], k: usize) -> Result<()> {
    if params.len() == k {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "construction `{name}` takes {k} parameters, got {}",
            params.len()
        )))
    }
}

/// Builds a construction by name; see [`CONSTRUCTIONS`].
pub fn build(name: &str, params: &[usize]) -> Result<Built> {
    let p = params;
    Ok(match name {
        "turan" => {
            arity(name, p, 2)?;
            Built::Graph(turan_graph(p[0], p[1])?)
        }
        "turan3" => {
            arity(name, p, 2)?;
            Built::Triples(turan_3graph(p[0], p[1])?)
        }
        "h3" => {
            arity(name, p, 2)?;
            Built::Triples(h3(p[0], p[1])?)
        }
        "star" => {
            arity(name, p, 2)?;
            Built::Triples(full_star(p[0], p[1])?)
        }
        "af" => {
            arity(name, p, 3)?;
            Built::Graph(alon_frankl_graph(p[0], p[1], p[2])?)
        }
        "kbip" => {
            arity(name, p, 1)?;
            Built::Graph(complete_bipartite_balanced(p[0])?)
        }
        "multipartite" => Built::Graph(multipartite_graph(&PartSpec::new(p.to_vec()))?),
        "multipartite3" => Built::Triples(multipartite_3graph(&PartSpec::new(p.to_vec()))?),
        _ => return Err(Error::InvalidParameter(format!("unknown construction `{name}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts pairs in distinct parts directly from the sizes.
    fn cross_pairs(sizes: &[usize]) -> usize {
        let mut t = 0;
        for i in 0..sizes.len() {
            for j in i + 1..sizes.len() {
                t += sizes[i] * sizes[j];
            }
        }
        t
    }

    #[test]
    fn balanced_parts_largest_first() {
        assert_eq!(PartSpec::balanced(7, 3).sizes(), &[3, 2, 2]);
        assert_eq!(PartSpec::balanced(5, 3).sizes(), &[2, 2, 1]);
        assert_eq!(PartSpec::balanced(2, 4).sizes(), &[1, 1, 0, 0]);
        let b = PartSpec::balanced(5, 2).blocks();
        assert_eq!(b[0], [0, 1, 2].into_iter().collect());
    }

    #[test]
    fn turan_graphs() {
        let g = turan_graph(5, 2).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(turan_graph(6, 1).unwrap().edge_count(), 0);
        assert_eq!(turan_graph(9, 3).unwrap().edge_count(), cross_pairs(&[3, 3, 3]));
        assert_eq!(turan_graph(9, 3).unwrap().edge_count(), 27);
        assert!(turan_graph(4, 0).is_err());
    }

    #[test]
    fn turan_3graphs() {
        assert_eq!(turan_3graph(9, 3).unwrap().len(), 27);
        assert_eq!(turan_3graph(33, 3).unwrap().len(), 1331);
        assert_eq!(turan_3graph(5, 3).unwrap().len(), 4);
        assert!(turan_3graph(5, 2).is_err());
    }

    #[test]
    fn h3_sizes() {
        assert_eq!(h3(9, 3).unwrap().len(), 27);
        assert_eq!(h3(12, 3).unwrap().len(), 60);
        assert!(h3(7, 0).unwrap().is_empty());
        assert!(h3(7, 6).is_err());
    }

    #[test]
    fn h3_link_of_small_part_vertex_is_k33() {
        let h = h3(9, 3).unwrap();
        let l = h.link(0).unwrap();
        // parts are {0,1,2}, {3,4,5}, {6,7,8}
        let mut want = Vec::new();
        for u in 3..6 {
            for v in 6..9 {
                want.push((u, v));
            }
        }
        assert_eq!(l.edges().collect::<Vec<_>>(), want);
        let w: VertexSet = (3..9).collect();
        assert_eq!(h.link_restricted(1, w).unwrap().edge_count(), 9);
        assert!(h.induced(w).is_empty());
        let a: VertexSet = (0..3).collect();
        assert_eq!(h.cross_subgraph(a, a.complement(9)).unwrap().len(), 27);
    }

    #[test]
    fn stars() {
        assert_eq!(full_star(5, 0).unwrap().len(), 6);
        assert_eq!(full_star(7, 0).unwrap().len(), 15);
        assert!(full_star(5, 5).is_err());
        let l = full_star(5, 0).unwrap().link(0).unwrap();
        assert_eq!(l.edge_count(), 6);
        assert_eq!(l.degree(0), 0);
        let h = full_star(6, 0).unwrap();
        assert_eq!(h.coneighborhood(0, 1).unwrap(), [2, 3, 4, 5].into_iter().collect());
    }

    #[test]
    fn alon_frankl_graphs() {
        let g = alon_frankl_graph(7, 2, 2).unwrap();
        assert_eq!(g.edge_count(), cross_pairs(&[5, 2]));
        assert_eq!(g.edge_count(), 10);
        assert_eq!(alon_frankl_graph(8, 3, 3).unwrap().edge_count(), cross_pairs(&[5, 2, 1]));
        assert_eq!(alon_frankl_graph(8, 3, 3).unwrap().edge_count(), 17);
        for n in 2..10 {
            for s in 0..=n {
                let g = alon_frankl_graph(n, 2, s).unwrap();
                assert_eq!(g.edge_count(), s * (n - s));
            }
        }
        assert!(alon_frankl_graph(5, 1, 2).is_err());
    }

    #[test]
    fn balanced_bipartite() {
        assert_eq!(complete_bipartite_balanced(4).unwrap().edge_count(), 4);
        assert_eq!(complete_bipartite_balanced(5).unwrap().edge_count(), 6);
        assert_eq!(complete_bipartite_balanced(1).unwrap().edge_count(), 0);
    }
}
