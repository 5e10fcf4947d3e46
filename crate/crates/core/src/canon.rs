//! Canonical forms up to vertex relabeling (and layer permutation for
//! multi-layer systems).
//!
//! The form is the lexicographically largest bit string obtained by listing,
//! for every `r`-subset of positions in colex order and every layer, whether
//! that edge is present. Vertices are first split into cells by an iterated
//! degree refinement; only labelings that respect the cell order are tried,
//! and a labeling is abandoned as soon as its prefix falls below the best
//! one seen.

use crate::error::{Error, Result};
use crate::model::vertex_set::bits;
use crate::model::{ColoredSystem, Graph, Triple, TripleSystem};

/// Largest vertex count [`canonical_form`] accepts.
pub const MAX_CANON_VERTICES: usize = 10;
/// Largest layer count for multi-layer canonical forms.
pub const MAX_CANON_LAYERS: usize = 4;

/// Edge presence for `p` layers of an `r`-graph on `n` vertices.
#[derive(Clone, Debug)]
pub(crate) struct Incidence {
    n: usize,
    r: usize,
    p: usize,
    /// r = 2: `rows[l * n + u]` is the adjacency row of `u` in layer `l`.
    /// r = 3: `rows[(l * n + u) * n + v]` is the coneighborhood of `uv`.
    rows: Vec<u64>,
}

impl Incidence {
    pub(crate) fn new(n: usize, r: usize, layers: &[Vec<u64>]) -> Self {
        let p = layers.len();
        let mut rows = vec![0u64; if r == 2 { p * n } else { p * n * n }];
        for (l, edges) in layers.iter().enumerate() {
            for &m in edges {
                let vs: Vec<usize> = bits(m).collect();
                if r == 2 {
                    rows[l * n + vs[0]] |= 1 << vs[1];
                    rows[l * n + vs[1]] |= 1 << vs[0];
                } else {
                    for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                        rows[(l * n + vs[a]) * n + vs[b]] |= 1 << vs[c];
                        rows[(l * n + vs[b]) * n + vs[a]] |= 1 << vs[c];
                    }
                }
            }
        }
        Incidence { n, r, p, rows }
    }

    #[inline]
    fn has(&self, l: usize, e: &[usize]) -> bool {
        let n = self.n;
        if self.r == 2 {
            self.rows[l * n + e[0]] >> e[1] & 1 == 1
        } else {
            self.rows[(l * n + e[0]) * n + e[1]] >> e[2] & 1 == 1
        }
    }

    /// Edge multiplicity of the pair `uv` summed over layers (codegree for
    /// 3-graphs).
    fn pair_weight(&self, u: usize, v: usize) -> u32 {
        let n = self.n;
        (0..self.p)
            .map(|l| {
                if self.r == 2 {
                    (self.rows[l * n + u] >> v & 1) as u32
                } else {
                    self.rows[(l * n + u) * n + v].count_ones()
                }
            })
            .sum()
    }

    fn layer_degree(&self, l: usize, u: usize) -> u32 {
        let n = self.n;
        if self.r == 2 {
            self.rows[l * n + u].count_ones()
        } else {
            (0..n).map(|v| self.rows[(l * n + u) * n + v].count_ones()).sum::<u32>() / 2
        }
    }
}

/// Result of canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Canon {
    pub bytes: Vec<u8>,
    /// New label of each old vertex.
    pub position_of: Vec<usize>,
    /// New layer `k` is old layer `layer_order[k]`.
    pub layer_order: Vec<usize>,
}

/// Vertex colors from iterated refinement, invariant under relabeling and
/// layer permutation.
fn refine(inc: &Incidence) -> Vec<usize> {
    let n = inc.n;
    let initial: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            let mut d: Vec<u32> = (0..inc.p).map(|l| inc.layer_degree(l, u)).collect();
            d.sort_unstable();
            d
        })
        .collect();
    let mut color = ranks(&initial);
    let weights: Vec<Vec<u32>> = (0..n)
        .map(|u| (0..n).map(|v| if u == v { 0 } else { inc.pair_weight(u, v) }).collect())
        .collect();
    loop {
        let classes = color.iter().max().map_or(0, |m| m + 1);
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|u| {
                let mut nb: Vec<(u32, u32)> = (0..n)
                    .filter(|&v| weights[u][v] > 0)
                    .map(|v| (color[v] as u32, weights[u][v]))
                    .collect();
                nb.sort_unstable();
                let mut s = vec![color[u] as u32];
                s.extend(nb.into_iter().flat_map(|(c, w)| [c, w]));
                s
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        color = next;
        if next_classes == classes {
            return color;
        }
    }
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; p], &mut out);
    out
}

struct Labeler<'a> {
    inc: &'a Incidence,
    /// Cell of each position.
    cell_at: Vec<usize>,
    color: Vec<usize>,
    layer_order: Vec<usize>,
    lam: Vec<usize>,
    key: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>, Vec<usize>)>,
}

impl Labeler<'_> {
    /// Appends the bits of edges whose largest position is `k`.
    fn push_segment(&mut self, k: usize) {
        let lam = &self.lam;
        if self.inc.r == 2 {
            for j in 0..k {
                let e = [lam[j], lam[k]];
                for &l in &self.layer_order {
                    self.key.push(self.inc.has(l, &e) as u8);
                }
            }
        } else {
            for j in 0..k {
                for i in 0..j {
                    let e = [lam[i], lam[j], lam[k]];
                    for &l in &self.layer_order {
                        self.key.push(self.inc.has(l, &e) as u8);
                    }
                }
            }
        }
    }

    /// `above` means the current prefix exceeds the best key's prefix.
    /// Returns whether the best key was replaced below this node, after which
    /// the two prefixes agree.
    fn dfs(&mut self, k: usize, used: u64, mut above: bool) -> bool {
        let n = self.inc.n;
        if k == n {
            if above || self.best.is_none() {
                self.best = Some((self.key.clone(), self.lam.clone(), self.layer_order.clone()));
                return true;
            }
            return false;
        }
        let mut replaced = false;
        let want = self.cell_at[k];
        for v in 0..n {
            if used >> v & 1 == 1 || self.color[v] != want {
                continue;
            }
            self.lam.push(v);
            let start = self.key.len();
            self.push_segment(k);
            let mut now_above = above;
            let mut prune = false;
            if !above {
                if let Some((bk, _, _)) = &self.best {
                    match self.key[start..].cmp(&bk[start..self.key.len()]) {
                        std::cmp::Ordering::Less => prune = true,
                        std::cmp::Ordering::Greater => now_above = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !prune && self.dfs(k + 1, used | 1 << v, now_above) {
                replaced = true;
                above = false;
            }
            self.key.truncate(start);
            self.lam.pop();
        }
        replaced
    }
}

/// Canonical labeling of `p` layers of an `r`-graph on `n` vertices given as
/// edge masks.
pub(crate) fn canonize(n: usize, r: usize, layers: &[Vec<u64>]) -> Result<Canon> {
    if n > MAX_CANON_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "canonical forms support n <= {MAX_CANON_VERTICES}, got {n}"
        )));
    }
    if layers.len() > MAX_CANON_LAYERS {
        return Err(Error::UnsupportedSize(format!(
            "canonical forms support at most {MAX_CANON_LAYERS} layers, got {}",
            layers.len()
        )));
    }
    let inc = Incidence::new(n, r, layers);
    let color = refine(&inc);
    let mut cell_at = color.clone();
    cell_at.sort_unstable();
    let mut lab = Labeler {
        inc: &inc,
        cell_at,
        color,
        layer_order: Vec::new(),
        lam: Vec::with_capacity(n),
        key: Vec::new(),
        best: None,
    };
    for order in permutations(layers.len()) {
        lab.layer_order = order;
        lab.dfs(0, 0, false);
    }
    let (key, lam, layer_order) = lab.best.expect("at least one labeling");
    let mut bytes = vec![n as u8, r as u8, layers.len() as u8];
    bytes.extend(key.chunks(8).map(|c| c.iter().fold(0u8, |acc, &b| acc << 1 | b) << (8 - c.len())));
    let mut position_of = vec![0; n];
    for (pos, &v) in lam.iter().enumerate() {
        position_of[v] = pos;
    }
    Ok(Canon {
        bytes,
        position_of,
        layer_order,
    })
}

/// Relabels edge masks by `position_of`.
pub(crate) fn relabel(mask: u64, position_of: &[usize]) -> u64 {
    bits(mask).fold(0u64, |acc, v| acc | 1 << position_of[v])
}

/// Canonical byte string of a graph: equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    Ok(canonize(g.n(), 2, &[crate::model::UniformEdges::edge_masks(g)])?.bytes)
}

pub fn canonical_form_triples(h: &TripleSystem) -> Result<Vec<u8>> {
    Ok(canonize(h.n(), 3, &[crate::model::UniformEdges::edge_masks(h)])?.bytes)
}

/// Canonical form of a colored system up to vertex relabeling and layer
/// permutation.
pub fn canonical_form_colored(s: &ColoredSystem) -> Result<Vec<u8>> {
    let layers: Vec<Vec<u64>> = s
        .layers()
        .iter()
        .map(crate::model::UniformEdges::edge_masks)
        .collect();
    Ok(canonize(s.n(), 2, &layers)?.bytes)
}

/// The canonical representative of a triple system.
pub fn canonical_triples(h: &TripleSystem) -> Result<TripleSystem> {
    let c = canonize(h.n(), 3, &[crate::model::UniformEdges::edge_masks(h)])?;
    let edges = h
        .edges()
        .iter()
        .map(|t| {
            let [a, b, x] = t.vertices().map(|v| c.position_of[v]);
            Triple::new(a, b, x).expect("bijection")
        })
        .collect();
    TripleSystem::from_triples(h.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{h3, turan_graph};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn permute_graph(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    fn permute_triples(h: &TripleSystem, perm: &[usize]) -> TripleSystem {
        TripleSystem::from_edges(h.n(), h.edges().iter().map(|t| t.vertices().map(|v| perm[v]))).unwrap()
    }

    #[test]
    fn relabelings_of_k23_agree() {
        let g = turan_graph(5, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let base = canonical_form(&g).unwrap();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..5).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&permute_graph(&g, &perm)).unwrap(), base);
        }
    }

    #[test]
    fn c6_and_two_triangles_differ() {
        let c6 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&tt).unwrap());
    }

    #[test]
    fn h3_invariant_under_relabeling() {
        let h = h3(7, 3).unwrap();
        let base = canonical_form_triples(&h).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form_triples(&permute_triples(&h, &perm)).unwrap(), base);
        }
        let c = canonical_triples(&h).unwrap();
        assert_eq!(canonical_form_triples(&c).unwrap(), base);
    }

    #[test]
    fn layer_permutation_is_quotiented() {
        let a = Graph::from_edges(4, [(0, 1)]).unwrap();
        let b = Graph::from_edges(4, [(1, 2), (2, 3)]).unwrap();
        let s1 = ColoredSystem::new(vec![a.clone(), b.clone()]).unwrap();
        let s2 = ColoredSystem::new(vec![b, a]).unwrap();
        assert_eq!(canonical_form_colored(&s1).unwrap(), canonical_form_colored(&s2).unwrap());
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            canonical_form(&Graph::empty(11).unwrap()),
            Err(Error::UnsupportedSize(_))
        ));
    }

    #[test]
    fn all_graphs_on_five_vertices_fall_into_34_classes() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut forms = std::collections::HashSet::new();
        for m in 0u32..1 << 10 {
            let g = Graph::from_edges(5, pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            forms.insert(canonical_form(&g).unwrap());
        }
        assert_eq!(forms.len(), 34);
    }
}
