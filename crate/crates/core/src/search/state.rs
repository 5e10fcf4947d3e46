//! Mutable search state with incremental constraint checks.
//!
//! Adding an edge can only create forbidden patterns through that edge, so
//! each check looks at the new edge in every role it can play.

use crate::detectors::has_matching_of_size;
use crate::model::vertex_set::bits;

use super::{Pattern, SearchProblem};

/// A candidate edge in one layer.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cand {
    pub verts: [usize; 3],
    pub mask: u64,
    pub layer: usize,
}

/// All `r`-subsets of `0..n` in colex order.
pub(crate) fn colex_edges(n: usize, r: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    if r == 2 {
        for j in 1..n {
            for i in 0..j {
                out.push([i, j, usize::MAX]);
            }
        }
    } else {
        for k in 2..n {
            for j in 1..k {
                for i in 0..j {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Candidates in branching order: colex on edges, layers innermost.
pub(crate) fn candidates(n: usize, r: usize, p: usize) -> Vec<Cand> {
    colex_edges(n, r)
        .into_iter()
        .flat_map(|verts| {
            let mask = verts[..r].iter().fold(0u64, |m, &v| m | 1 << v);
            (0..p).map(move |layer| Cand { verts, mask, layer })
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Layer {
    adj: Vec<u64>,
    co: Vec<u64>,
    edges: Vec<u64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Workspace {
    pub n: usize,
    pub r: usize,
    pub p: usize,
    triangle: bool,
    clique: Option<usize>,
    f5: bool,
    two_colored_triangle: bool,
    rainbow_triangle: bool,
    two_colored_f5: bool,
    nu_max: Option<usize>,
    layers: Vec<Layer>,
    count: usize,
}

fn clique_in(adj: &[u64], cand: u64, k: usize) -> bool {
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
        if clique_in(adj, c & adj[v], k - 1) {
            return true;
        }
    }
    false
}

/// New edge `t = abc` plus an existing `abd` (from `abd_co`) and `cde`
/// (from `cde_co`).
fn f5_as_abc(n: usize, t: [usize; 3], abd_co: &[u64], cde_co: &[u64]) -> bool {
    let [x, y, z] = t;
    for (a, b, c) in [(x, y, z), (x, z, y), (y, z, x)] {
        let ds = abd_co[a * n + b] & !(1u64 << c);
        let ab = 1u64 << a | 1u64 << b;
        for d in bits(ds) {
            if cde_co[c * n + d] & !ab != 0 {
                return true;
            }
        }
    }
    false
}

/// New edge `t = cde` plus existing `abc` (from `abc_co`) and `abd` (from
/// `abd_co`).
fn f5_as_cde(n: usize, t: [usize; 3], abc_co: &[u64], abd_co: &[u64]) -> bool {
    let [x, y, z] = t;
    let tm = 1u64 << x | 1u64 << y | 1u64 << z;
    for (c, d, e) in [(x, y, z), (x, z, y), (y, z, x)] {
        for a in (0..n).filter(|&a| tm >> a & 1 == 0) {
            if abc_co[a * n + c] & abd_co[a * n + d] & !(1u64 << e) != 0 {
                return true;
            }
        }
    }
    false
}

impl Workspace {
    pub fn new(prob: &SearchProblem) -> Self {
        let n = prob.n;
        let r = prob.uniformity;
        let mut w = Workspace {
            n,
            r,
            p: prob.layers,
            triangle: false,
            clique: None,
            f5: false,
            two_colored_triangle: false,
            rainbow_triangle: false,
            two_colored_f5: false,
            nu_max: prob.nu_max,
            layers: vec![
                Layer {
                    adj: vec![0; n],
                    co: if r == 3 { vec![0; n * n] } else { Vec::new() },
                    edges: Vec::new(),
                };
                prob.layers
            ],
            count: 0,
        };
        for f in &prob.forbidden {
            match *f {
                Pattern::Triangle => w.triangle = true,
                Pattern::Clique(3) => w.triangle = true,
                Pattern::Clique(q) => {
                    w.clique = Some(w.clique.map_or(q, |c| c.min(q)));
                }
                Pattern::F5 => w.f5 = true,
                Pattern::TwoColoredTriangle => w.two_colored_triangle = true,
                Pattern::RainbowTriangle => w.rainbow_triangle = true,
                Pattern::TwoColoredF5 => w.two_colored_f5 = true,
            }
        }
        w
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn contains(&self, c: &Cand) -> bool {
        self.layers[c.layer].edges.contains(&c.mask)
    }

    pub fn add(&mut self, c: &Cand) {
        let n = self.n;
        let l = &mut self.layers[c.layer];
        let [x, y, z] = c.verts;
        if self.r == 2 {
            l.adj[x] |= 1 << y;
            l.adj[y] |= 1 << x;
        } else {
            for (a, b, w) in [(x, y, z), (x, z, y), (y, z, x)] {
                l.co[a * n + b] |= 1 << w;
                l.co[b * n + a] |= 1 << w;
            }
            for v in [x, y, z] {
                l.adj[v] |= c.mask & !(1 << v);
            }
        }
        l.edges.push(c.mask);
        self.count += 1;
    }

    pub fn remove(&mut self, c: &Cand) {
        let n = self.n;
        let l = &mut self.layers[c.layer];
        let [x, y, z] = c.verts;
        let pos = l.edges.iter().rposition(|&m| m == c.mask).expect("present");
        l.edges.remove(pos);
        if self.r == 2 {
            l.adj[x] &= !(1 << y);
            l.adj[y] &= !(1 << x);
        } else {
            for (a, b, w) in [(x, y, z), (x, z, y), (y, z, x)] {
                l.co[a * n + b] &= !(1 << w);
                l.co[b * n + a] &= !(1 << w);
            }
            // pair adjacency is only used as a coarse filter; recompute
            for v in [x, y, z] {
                l.adj[v] = (0..n).filter(|&u| l.co[v * n + u] != 0).fold(0, |m, u| m | 1 << u);
            }
        }
        self.count -= 1;
    }

    /// Whether adding `c` keeps every constraint satisfied. The matching
    /// bound is the expensive one and is only checked when `with_nu`.
    pub fn admissible(&self, c: &Cand, with_nu: bool) -> bool {
        let i = c.layer;
        let li = &self.layers[i];
        if self.r == 2 {
            let (u, v) = (c.verts[0], c.verts[1]);
            let common = li.adj[u] & li.adj[v];
            if self.triangle && common != 0 {
                return false;
            }
            if let Some(q) = self.clique {
                if clique_in(&li.adj, common, q - 2) {
                    return false;
                }
            }
            if self.two_colored_triangle {
                for (j, lj) in self.layers.iter().enumerate() {
                    if j != i
                        && (lj.adj[u] & lj.adj[v] != 0
                            || li.adj[v] & lj.adj[u] != 0
                            || li.adj[u] & lj.adj[v] != 0)
                    {
                        return false;
                    }
                }
            }
            if self.rainbow_triangle {
                for j in (0..self.p).filter(|&j| j != i) {
                    for k in (0..self.p).filter(|&k| k != i && k != j) {
                        if self.layers[j].adj[u] & self.layers[k].adj[v] != 0 {
                            return false;
                        }
                    }
                }
            }
        } else {
            let n = self.n;
            let t = c.verts;
            if self.f5 && (f5_as_abc(n, t, &li.co, &li.co) || f5_as_cde(n, t, &li.co, &li.co)) {
                return false;
            }
            if self.two_colored_f5 {
                for j in 0..self.p {
                    for k in 0..self.p {
                        let colors = if i == j && j == k {
                            1
                        } else if i == j || j == k || i == k {
                            2
                        } else {
                            3
                        };
                        if colors != 2 {
                            continue;
                        }
                        let (cj, ck) = (&self.layers[j].co, &self.layers[k].co);
                        if f5_as_abc(n, t, cj, ck) || f5_as_cde(n, t, cj, ck) {
                            return false;
                        }
                    }
                }
            }
        }
        if with_nu {
            if let Some(s) = self.nu_max {
                let rest: Vec<u64> = li.edges.iter().copied().filter(|&m| m & c.mask == 0).collect();
                if has_matching_of_size(&rest, self.r, s) {
                    return false;
                }
            }
        }
        true
    }

    /// Edge masks per layer.
    pub fn snapshot(&self) -> Vec<Vec<u64>> {
        self.layers.iter().map(|l| l.edges.clone()).collect()
    }

    /// Layer edges restricted to the first `k` vertices.
    pub fn prefix_snapshot(&self, k: usize) -> Vec<Vec<u64>> {
        let m = crate::model::VertexSet::full(k).bits();
        self.layers
            .iter()
            .map(|l| l.edges.iter().copied().filter(|&e| e & !m == 0).collect())
            .collect()
    }
}
