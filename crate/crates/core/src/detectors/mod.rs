//! Exact detectors for the fixed forbidden patterns: the generalized
//! triangle F5 (`{abc, abd, cde}`), triangles, 2-colored and rainbow
//! triangles, cliques, plus matchings, square graphs and the maximum
//! codegree.
//!
//! Every finder returns the lexicographically least witness under vertex
//! order, and every witness can be re-checked by the `validate_*` methods,
//! which test edge membership independently of the finder's own machinery.

mod matching;

pub use matching::{find_rainbow_matching, greedy_extension_matching, matching_number, Matching};
pub(crate) use matching::has_matching_of_size;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::vertex_set::{above, bits};
use crate::model::{ColoredSystem, Graph, GraphBuilder, TripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PatternKind {
    F5,
    Triangle,
    TwoColoredTriangle,
    RainbowTriangle,
    TwoColoredF5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEdge {
    pub vertices: Vec<usize>,
    /// Layer index for colored patterns.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
}

/// A located copy of a forbidden pattern.
///
/// Vertex order per kind:
/// - `F5`: `[a, b, c, d, e]` with edges `abc, abd, cde`;
/// - `Triangle`: `[x, y, z]` ascending;
/// - `TwoColoredTriangle`: `[x, y, z]` where `xz, zy` share a layer and
///   `xy` lies in another;
/// - `RainbowTriangle`: `[x, y, z]` ascending, edges `xy, yz, xz` in three
///   distinct layers;
/// - `TwoColoredF5`: `[a, b, c, d, e]` with layered edges `abc, abd, cde`
///   using exactly two distinct layers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<WitnessEdge>,
}

fn edge(vs: &[usize], layer: Option<usize>) -> WitnessEdge {
    let mut v = vs.to_vec();
    v.sort_unstable();
    WitnessEdge { vertices: v, layer }
}

fn distinct(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

impl PatternWitness {
    /// Re-checks an F5 witness against the sorted edge list of `h`.
    pub fn validate_triples(&self, h: &TripleSystem) -> bool {
        if self.kind != PatternKind::F5 || self.vertices.len() != 5 || !distinct(&self.vertices) {
            return false;
        }
        let [a, b, c, d, e] = [0, 1, 2, 3, 4].map(|i| self.vertices[i]);
        let want = [edge(&[a, b, c], None), edge(&[a, b, d], None), edge(&[c, d, e], None)];
        want.iter().all(|w| {
            let t = crate::model::Triple::new(w.vertices[0], w.vertices[1], w.vertices[2]);
            t.is_ok_and(|t| h.edges().binary_search(&t).is_ok())
        }) && self.edges == want
    }

    pub fn validate_graph(&self, g: &Graph) -> bool {
        if self.kind != PatternKind::Triangle || self.vertices.len() != 3 || !distinct(&self.vertices) {
            return false;
        }
        let [x, y, z] = [self.vertices[0], self.vertices[1], self.vertices[2]];
        let in_g = |u: usize, v: usize| g.edges().any(|e| e == (u.min(v), u.max(v)));
        in_g(x, y) && in_g(y, z) && in_g(x, z)
    }

    pub fn validate_colored(&self, s: &ColoredSystem) -> bool {
        if self.vertices.len() != 3 || !distinct(&self.vertices) || self.edges.len() != 3 {
            return false;
        }
        let in_layer = |e: &WitnessEdge| match e.layer {
            Some(l) if l < s.p() && e.vertices.len() == 2 => s
                .layer(l)
                .edges()
                .any(|p| p == (e.vertices[0], e.vertices[1])),
            _ => false,
        };
        if !self.edges.iter().all(in_layer) {
            return false;
        }
        let mut pairs: Vec<Vec<usize>> = self.edges.iter().map(|e| e.vertices.clone()).collect();
        pairs.sort();
        let [x, y, z] = [self.vertices[0], self.vertices[1], self.vertices[2]];
        let mut want = vec![edge(&[x, y], None).vertices, edge(&[y, z], None).vertices, edge(&[x, z], None).vertices];
        want.sort();
        if pairs != want {
            return false;
        }
        let l: Vec<usize> = self.edges.iter().map(|e| e.layer.unwrap()).collect();
        match self.kind {
            PatternKind::TwoColoredTriangle => {
                // edges listed as xz, zy (same layer), xy (other layer)
                self.edges[0].vertices == edge(&[x, z], None).vertices
                    && self.edges[1].vertices == edge(&[z, y], None).vertices
                    && l[0] == l[1]
                    && l[2] != l[0]
            }
            PatternKind::RainbowTriangle => l[0] != l[1] && l[1] != l[2] && l[0] != l[2],
            _ => false,
        }
    }
}

impl PatternWitness {
    /// Re-checks a 2-colored F5 witness against colored triple layers.
    pub fn validate_colored_triples(&self, layers: &[TripleSystem]) -> bool {
        if self.kind != PatternKind::TwoColoredF5 || self.vertices.len() != 5 || !distinct(&self.vertices) {
            return false;
        }
        let [a, b, c, d, e] = [0, 1, 2, 3, 4].map(|i| self.vertices[i]);
        let shapes = [[a, b, c], [a, b, d], [c, d, e]];
        if self.edges.len() != 3 {
            return false;
        }
        let mut used = Vec::new();
        for (w, shape) in self.edges.iter().zip(shapes) {
            let Some(l) = w.layer.filter(|&l| l < layers.len()) else {
                return false;
            };
            if w.vertices != edge(&shape, None).vertices {
                return false;
            }
            let Ok(t) = crate::model::Triple::new(shape[0], shape[1], shape[2]) else {
                return false;
            };
            if layers[l].edges().binary_search(&t).is_err() {
                return false;
            }
            if !used.contains(&l) {
                used.push(l);
            }
        }
        used.len() == 2
    }
}

/// Finds a copy of F5 whose three edges use exactly two distinct layers.
///
/// Brute force over vertex tuples; intended for small `n`.
pub fn find_two_colored_f5(layers: &[TripleSystem]) -> Result<Option<PatternWitness>> {
    let Some(first) = layers.first() else {
        return Err(Error::InvalidParameter("at least one layer required".into()));
    };
    let n = first.n();
    if layers.iter().any(|l| l.n() != n) {
        return Err(Error::InvalidParameter("layers must share the vertex count".into()));
    }
    let colors = |x: usize, y: usize, z: usize| -> u32 {
        layers
            .iter()
            .enumerate()
            .filter(|(_, l)| l.co_bits(x, y) >> z & 1 == 1)
            .fold(0u32, |m, (i, _)| m | 1 << i)
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in (0..n).filter(|&c| c != a && c != b) {
                let l1 = colors(a, b, c);
                if l1 == 0 {
                    continue;
                }
                for d in (c + 1..n).filter(|&d| d != a && d != b) {
                    let l2 = colors(a, b, d);
                    if l2 == 0 {
                        continue;
                    }
                    for e in (0..n).filter(|&e| ![a, b, c, d].contains(&e)) {
                        let l3 = colors(c, d, e);
                        for (i, j, k) in layer_triples(l1, l2, l3) {
                            let set = 1u32 << i | 1 << j | 1 << k;
                            if set.count_ones() == 2 {
                                return Ok(Some(PatternWitness {
                                    kind: PatternKind::TwoColoredF5,
                                    vertices: vec![a, b, c, d, e],
                                    edges: vec![
                                        edge(&[a, b, c], Some(i)),
                                        edge(&[a, b, d], Some(j)),
                                        edge(&[c, d, e], Some(k)),
                                    ],
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn layer_triples(l1: u32, l2: u32, l3: u32) -> impl Iterator<Item = (usize, usize, usize)> {
    let it = |m: u32| (0..32).filter(move |&i| m >> i & 1 == 1);
    it(l1).flat_map(move |i| it(l2).flat_map(move |j| it(l3).map(move |k| (i, j, k))))
}

/// Finds a copy of F5 in `h` (as a subgraph, not necessarily induced).
///
/// Scans pairs `{a, b}` with codegree at least two; any two of their
/// coneighbors `c < d` form the edges `abc, abd`, and an F5 exists iff
/// `N(c, d)` is not contained in `{a, b}`.
pub fn find_f5(h: &TripleSystem) -> Option<PatternWitness> {
    let n = h.n();
    for a in 0..n {
        for b in a + 1..n {
            let m = h.co_bits(a, b);
            if m.count_ones() < 2 {
                continue;
            }
            for c in bits(m) {
                for d in bits(m & above(c)) {
                    let rest = h.co_bits(c, d) & !(1u64 << a | 1u64 << b);
                    if rest != 0 {
                        let e = rest.trailing_zeros() as usize;
                        return Some(PatternWitness {
                            kind: PatternKind::F5,
                            vertices: vec![a, b, c, d, e],
                            edges: vec![edge(&[a, b, c], None), edge(&[a, b, d], None), edge(&[c, d, e], None)],
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_f5_free(h: &TripleSystem) -> bool {
    find_f5(h).is_none()
}

/// `G²`: `xy` is an edge iff `x` and `y` have a common neighbor.
pub fn square(g: &Graph) -> Graph {
    let n = g.n();
    let mut b = GraphBuilder::new(n).expect("same n");
    for x in 0..n {
        for y in x + 1..n {
            if g.row(x) & g.row(y) != 0 {
                b.add_edge(x, y).expect("in range");
            }
        }
    }
    b.build()
}

pub fn find_triangle(g: &Graph) -> Option<PatternWitness> {
    let n = g.n();
    for x in 0..n {
        for y in bits(g.row(x) & above(x)) {
            let common = g.row(x) & g.row(y) & above(y);
            if common != 0 {
                let z = common.trailing_zeros() as usize;
                return Some(PatternWitness {
                    kind: PatternKind::Triangle,
                    vertices: vec![x, y, z],
                    edges: vec![edge(&[x, y], None), edge(&[y, z], None), edge(&[x, z], None)],
                });
            }
        }
    }
    None
}

/// No edge `xy` whose endpoints share a neighbor, i.e. `E(G) ∩ E(G²) = ∅`.
pub fn is_triangle_free(g: &Graph) -> bool {
    (0..g.n()).all(|x| bits(g.row(x)).all(|y| g.row(x) & g.row(y) == 0))
}

fn clique_in(g: &Graph, cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    let mut c = cand;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        if clique_in(g, c & g.row(v), k - 1) {
            return true;
        }
    }
    false
}

/// Whether `g` contains `K_k`.
pub fn has_clique(g: &Graph, k: usize) -> bool {
    clique_in(g, crate::model::VertexSet::full(g.n()).bits(), k)
}

fn need_layers(s: &ColoredSystem, p: usize, what: &str) -> Result<()> {
    if s.p() < p {
        return Err(Error::InvalidRequest(format!(
            "{what} needs at least {p} layers, system has {}",
            s.p()
        )));
    }
    Ok(())
}

/// Finds `x, y, z` with `xz, zy ∈ G_i` and `xy ∈ G_j`, `i ≠ j`.
///
/// Works through square graphs: such a triangle exists iff some edge of
/// `G_j` is also an edge of `G_i²`.
pub fn find_two_colored_triangle(s: &ColoredSystem) -> Result<Option<PatternWitness>> {
    need_layers(s, 2, "a 2-colored triangle")?;
    let n = s.n();
    let squares: Vec<Graph> = s.layers().iter().map(square).collect();
    for x in 0..n {
        for y in x + 1..n {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, sq) in squares.iter().enumerate() {
                if !sq.has_edge(x, y) {
                    continue;
                }
                let z = (s.layer(i).row(x) & s.layer(i).row(y)).trailing_zeros() as usize;
                for j in (0..s.p()).filter(|&j| j != i) {
                    if s.layer(j).has_edge(x, y) && best.is_none_or(|b| (z, i, j) < b) {
                        best = Some((z, i, j));
                    }
                }
            }
            if let Some((z, i, j)) = best {
                return Ok(Some(PatternWitness {
                    kind: PatternKind::TwoColoredTriangle,
                    vertices: vec![x, y, z],
                    edges: vec![edge(&[x, z], Some(i)), edge(&[z, y], Some(i)), edge(&[x, y], Some(j))],
                }));
            }
        }
    }
    Ok(None)
}

/// A triangle whose three edges come from three distinct layers.
pub fn find_rainbow_triangle(s: &ColoredSystem) -> Result<Option<PatternWitness>> {
    need_layers(s, 3, "a rainbow triangle")?;
    let n = s.n();
    let p = s.p();
    let layers_of = |u: usize, v: usize| -> Vec<usize> {
        (0..p).filter(|&l| s.layer(l).has_edge(u, v)).collect()
    };
    for x in 0..n {
        for y in x + 1..n {
            let lxy = layers_of(x, y);
            if lxy.is_empty() {
                continue;
            }
            for z in y + 1..n {
                let lyz = layers_of(y, z);
                let lxz = layers_of(x, z);
                for &a in &lxy {
                    for &b in lyz.iter().filter(|&&b| b != a) {
                        if let Some(&c) = lxz.iter().find(|&&c| c != a && c != b) {
                            return Ok(Some(PatternWitness {
                                kind: PatternKind::RainbowTriangle,
                                vertices: vec![x, y, z],
                                edges: vec![edge(&[x, y], Some(a)), edge(&[y, z], Some(b)), edge(&[x, z], Some(c))],
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `Δ₂(H)`, the largest codegree over all pairs.
pub fn max_codegree(h: &TripleSystem) -> usize {
    let n = h.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| h.codegree(u, v))
        .max()
        .unwrap_or(0)
}
