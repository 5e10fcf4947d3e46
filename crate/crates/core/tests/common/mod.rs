//! Brute-force oracles that share no code with the search engine: every
//! system on a small vertex set is enumerated as a bitmask over the list of
//! possible edges and checked against precomputed pattern copies.
#![allow(dead_code)]

use std::collections::BTreeSet;

use exturan_core::canon::{canonical_form, canonical_form_colored, canonical_form_triples};
use exturan_core::{ColoredSystem, Graph, TripleSystem};

pub fn pairs(n: usize) -> Vec<[usize; 2]> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push([a, b]);
        }
    }
    v
}

pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                v.push([a, b, c]);
            }
        }
    }
    v
}

fn sorted<const K: usize>(mut e: [usize; K]) -> [usize; K] {
    e.sort_unstable();
    e
}

fn pos<const K: usize>(list: &[[usize; K]], e: [usize; K]) -> usize {
    list.iter().position(|&x| x == sorted(e)).unwrap()
}

/// Every F5 copy `{abc, abd, cde}` as three indices into `triples(n)`.
pub fn f5_copies(n: usize) -> Vec<[usize; 3]> {
    let ts = triples(n);
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let vs = [a, b, c, d, e];
                        let distinct = (0..5).all(|i| (i + 1..5).all(|j| vs[i] != vs[j]));
                        if distinct {
                            out.insert([pos(&ts, [a, b, c]), pos(&ts, [a, b, d]), pos(&ts, [c, d, e])]);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn graph_from_mask(n: usize, m: u64) -> Graph {
    let ps = pairs(n);
    Graph::from_edges(n, (0..ps.len()).filter(|i| m >> i & 1 == 1).map(|i| (ps[i][0], ps[i][1]))).unwrap()
}

pub fn triples_from_mask(n: usize, m: u64) -> TripleSystem {
    let ts = triples(n);
    TripleSystem::from_edges(n, (0..ts.len()).filter(|i| m >> i & 1 == 1).map(|i| ts[i])).unwrap()
}

/// Maximum number of edges of an F5-free 3-graph on `n` vertices and the
/// canonical forms of all maximizers.
pub fn f5_oracle(n: usize) -> (u32, BTreeSet<Vec<u8>>) {
    let m = triples(n).len();
    let copies: Vec<u64> = f5_copies(n)
        .iter()
        .map(|c| c.iter().fold(0u64, |acc, &i| acc | 1 << i))
        .collect();
    let mut best = 0;
    let mut maxima = Vec::new();
    for s in 0u64..1 << m {
        let k = s.count_ones();
        if k < best || copies.iter().any(|&c| c & !s == 0) {
            continue;
        }
        if k > best {
            best = k;
            maxima.clear();
        }
        maxima.push(s);
    }
    let classes = maxima
        .iter()
        .map(|&s| canonical_form_triples(&triples_from_mask(n, s)).unwrap())
        .collect();
    (best, classes)
}

/// Triangles as the three edge indices into `pairs(n)`.
pub fn triangle_edges(n: usize) -> Vec<[usize; 3]> {
    let ps = pairs(n);
    triples(n)
        .iter()
        .map(|&[a, b, c]| [pos(&ps, [a, b]), pos(&ps, [b, c]), pos(&ps, [a, c])])
        .collect()
}

/// Generic single-layer graph oracle: max edges with `ok(mask)`, plus the
/// canonical forms of the maximizers.
pub fn graph_oracle(n: usize, ok: impl Fn(u64) -> bool) -> (u32, BTreeSet<Vec<u8>>) {
    let m = pairs(n).len();
    let mut best = 0;
    let mut maxima = Vec::new();
    for s in 0u64..1 << m {
        let k = s.count_ones();
        if k < best || !ok(s) {
            continue;
        }
        if k > best {
            best = k;
            maxima.clear();
        }
        maxima.push(s);
    }
    let classes = maxima
        .iter()
        .map(|&s| canonical_form(&graph_from_mask(n, s)).unwrap())
        .collect();
    (best, classes)
}

pub fn triangle_free_mask(n: usize) -> impl Fn(u64) -> bool {
    let tris: Vec<u64> = triangle_edges(n)
        .iter()
        .map(|t| t.iter().fold(0u64, |a, &i| a | 1 << i))
        .collect();
    move |s| tris.iter().all(|&t| s & t != t)
}

/// Matching number by brute force over edge subsets of a pair mask.
pub fn nu_of_pairs(n: usize, s: u64) -> usize {
    let ps = pairs(n);
    let edges: Vec<u64> = (0..ps.len())
        .filter(|i| s >> i & 1 == 1)
        .map(|i| 1u64 << ps[i][0] | 1u64 << ps[i][1])
        .collect();
    fn go(edges: &[u64], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&e, rest)) => {
                let skip = go(rest, used);
                if e & used == 0 {
                    skip.max(1 + go(rest, used | e))
                } else {
                    skip
                }
            }
        }
    }
    go(&edges, 0)
}

/// All 2-colored triangle patterns: `(two edges in one layer, third edge)`.
fn two_colored_patterns(n: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in triangle_edges(n) {
        for apex_opposite in 0..3 {
            let third = 1u64 << t[apex_opposite];
            let two = t.iter().fold(0u64, |a, &i| a | 1 << i) & !third;
            out.push((two, third));
        }
    }
    out
}

/// Max of `Σ e(G_i)` over 2-colored-triangle-free systems with `p` layers, and
/// the canonical forms of all maximizers.
pub fn two_colored_oracle(n: usize, p: usize) -> (u32, BTreeSet<Vec<u8>>) {
    let m = pairs(n).len();
    let pats = two_colored_patterns(n);
    let mut best = 0;
    let mut maxima = Vec::new();
    let mut layers = vec![0u64; p];
    fn rec(
        i: usize,
        m: usize,
        pats: &[(u64, u64)],
        layers: &mut Vec<u64>,
        best: &mut u32,
        maxima: &mut Vec<Vec<u64>>,
    ) {
        if i == layers.len() {
            let k: u32 = layers.iter().map(|l| l.count_ones()).sum();
            if k >= *best {
                if k > *best {
                    *best = k;
                    maxima.clear();
                }
                maxima.push(layers.clone());
            }
            return;
        }
        for s in 0u64..1 << m {
            let bad = layers[..i].iter().any(|&o| {
                pats.iter()
                    .any(|&(two, e)| (s & two == two && o & e != 0) || (o & two == two && s & e != 0))
            });
            if !bad {
                layers[i] = s;
                rec(i + 1, m, pats, layers, best, maxima);
            }
        }
    }
    rec(0, m, &pats, &mut layers, &mut best, &mut maxima);
    let classes = maxima
        .iter()
        .map(|ls| {
            let gs = ls.iter().map(|&s| graph_from_mask(n, s)).collect();
            canonical_form_colored(&ColoredSystem::new(gs).unwrap()).unwrap()
        })
        .collect();
    (best, classes)
}

/// Max of `Σ e(G_i)` over rainbow-triangle-free systems with three layers.
pub fn rainbow_oracle_3(n: usize) -> u32 {
    let m = pairs(n).len();
    let tris = triangle_edges(n);
    let bit = |i: usize| 1u64 << i;
    let mut best = 0;
    for a in 0u64..1 << m {
        for b in 0u64..1 << m {
            let ab = a.count_ones() + b.count_ones();
            if ab + m as u32 <= best {
                continue;
            }
            for c in 0u64..1 << m {
                let k = ab + c.count_ones();
                if k <= best {
                    continue;
                }
                let ls = [a, b, c];
                let rainbow = tris.iter().any(|t| {
                    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
                        .iter()
                        .any(|perm| (0..3).all(|k| ls[perm[k]] & bit(t[k]) != 0))
                });
                if !rainbow {
                    best = k;
                }
            }
        }
    }
    best
}

/// Max of `|H_1| + |H_2|` over pairs of 3-graphs with no F5 whose edges use
/// exactly two layers.
pub fn colored_f5_oracle_2(n: usize) -> u32 {
    let m = triples(n).len();
    let copies = f5_copies(n);
    let mut best = 0;
    for a in 0u64..1 << m {
        for b in 0u64..1 << m {
            let k = a.count_ones() + b.count_ones();
            if k <= best {
                continue;
            }
            let ls = [a, b];
            let bad = copies.iter().any(|c| {
                (0..8u32).any(|col| {
                    let cs = [col & 1, col >> 1 & 1, col >> 2 & 1];
                    let two = !(cs[0] == cs[1] && cs[1] == cs[2]);
                    two && (0..3).all(|k| ls[cs[k] as usize] >> c[k] & 1 == 1)
                })
            });
            if !bad {
                best = k;
            }
        }
    }
    best
}
