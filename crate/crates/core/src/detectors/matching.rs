use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::vertex_set::bits;
use crate::model::{ColoredSystem, UniformEdges};

/// Pairwise vertex-disjoint edges. For rainbow matchings `layers[i]` is the
/// layer edge `i` was drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    fn from_masks(masks: impl IntoIterator<Item = u64>) -> Self {
        Matching {
            edges: masks.into_iter().map(|m| bits(m).collect()).collect(),
            layers: None,
        }
    }

    /// Checks disjointness, and for rainbow matchings that the layers are
    /// distinct.
    pub fn is_valid(&self) -> bool {
        let mut used = 0u64;
        for e in &self.edges {
            for &v in e {
                if v >= 64 || used >> v & 1 == 1 {
                    return false;
                }
                used |= 1u64 << v;
            }
        }
        match &self.layers {
            None => true,
            Some(l) => {
                let mut s = l.clone();
                s.sort_unstable();
                s.dedup();
                l.len() == self.edges.len() && s.len() == l.len()
            }
        }
    }
}

/// Size of some vertex cover of `avail`, built greedily by highest degree.
/// Any cover bounds the matching number from above.
fn greedy_cover(edges: &[u64], avail: &[usize]) -> usize {
    let mut left: Vec<u64> = avail.iter().map(|&i| edges[i]).collect();
    let mut size = 0;
    while !left.is_empty() {
        let mut count = [0u32; 64];
        for &m in &left {
            for v in bits(m) {
                count[v] += 1;
            }
        }
        let (v, _) = count
            .iter()
            .enumerate()
            .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
            .expect("64 entries");
        left.retain(|m| m >> v & 1 == 0);
        size += 1;
    }
    size
}

struct MatchingSearch<'a> {
    edges: &'a [u64],
    r: usize,
    goal: usize,
    best: Vec<usize>,
    cur: Vec<usize>,
}

impl MatchingSearch<'_> {
    fn run(&mut self, avail: &[usize]) {
        if self.best.len() >= self.goal {
            return;
        }
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
            if self.best.len() >= self.goal {
                return;
            }
        }
        if avail.is_empty() {
            return;
        }
        let union = avail.iter().fold(0u64, |acc, &i| acc | self.edges[i]);
        let by_vertices = union.count_ones() as usize / self.r;
        let mut ub = by_vertices.min(avail.len());
        if self.cur.len() + ub > self.best.len() {
            ub = ub.min(greedy_cover(self.edges, avail));
        }
        if self.cur.len() + ub <= self.best.len() {
            return;
        }
        let first = avail[0];
        let m = self.edges[first];
        let next: Vec<usize> = avail[1..]
            .iter()
            .copied()
            .filter(|&j| self.edges[j] & m == 0)
            .collect();
        self.cur.push(first);
        self.run(&next);
        self.cur.pop();
        self.run(&avail[1..]);
    }
}

/// Maximum matching among `edges` (vertex masks of uniformity `r`), stopping
/// early once `goal` edges are found. `seed` is a known matching used as the
/// initial incumbent.
pub(crate) fn max_matching_masks(edges: &[u64], r: usize, goal: usize, seed: Vec<usize>) -> Vec<usize> {
    let mut s = MatchingSearch {
        edges,
        r,
        goal,
        best: seed,
        cur: Vec::new(),
    };
    let all: Vec<usize> = (0..edges.len()).collect();
    s.run(&all);
    s.best
}

/// Whether `edges` contain `k` pairwise disjoint members.
pub(crate) fn has_matching_of_size(edges: &[u64], r: usize, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if edges.len() < k {
        return false;
    }
    // quick greedy accept
    let mut used = 0u64;
    let mut got = 0;
    for &m in edges {
        if m & used == 0 {
            used |= m;
            got += 1;
            if got >= k {
                return true;
            }
        }
    }
    max_matching_masks(edges, r, k, Vec::new()).len() >= k
}

/// Degree-ordered greedy matching.
///
/// For each `k`, the `k` highest-degree vertices are reserved; processing
/// them from rank `k` down to rank 1, each picks the first edge through it
/// that avoids every reserved vertex and every edge already chosen. The
/// largest `k` that succeeds wins. This is the extension procedure that
/// shows high-degree vertices force large matchings.
pub fn greedy_extension_matching<H: UniformEdges>(h: &H) -> Matching {
    let masks = h.edge_masks();
    Matching::from_masks(greedy_extension_indices(&masks, h.vertex_count(), h.uniformity()).into_iter().map(|i| masks[i]))
}

fn greedy_extension_indices(masks: &[u64], n: usize, r: usize) -> Vec<usize> {
    let mut deg = vec![0usize; n];
    for &m in masks {
        for v in bits(m) {
            deg[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));

    let mut best: Vec<usize> = Vec::new();
    for k in 1..=n / r.max(1) {
        let reserved = order[..k].iter().fold(0u64, |a, &v| a | 1u64 << v);
        let mut used = reserved;
        let mut chosen = Vec::with_capacity(k);
        let ok = order[..k].iter().rev().all(|&v| {
            let vb = 1u64 << v;
            match masks.iter().position(|&m| m & vb != 0 && m & used == vb) {
                Some(i) => {
                    used |= masks[i];
                    chosen.push(i);
                    true
                }
                None => false,
            }
        });
        if ok && chosen.len() > best.len() {
            best = chosen;
        }
    }
    // plain first-fit greedy as a fallback seed
    let mut used = 0u64;
    let mut first_fit = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        if m & used == 0 {
            used |= m;
            first_fit.push(i);
        }
    }
    if first_fit.len() > best.len() {
        best = first_fit;
    }
    best
}

/// The matching number `ν` with a maximum matching as witness.
///
/// Branch and bound over the canonical edge list: take or discard the first
/// remaining edge, bounded by the number of live vertices over the
/// uniformity and by a greedy vertex cover of the remaining edges.
pub fn matching_number<H: UniformEdges>(h: &H) -> Matching {
    let masks = h.edge_masks();
    let r = h.uniformity();
    let seed = greedy_extension_indices(&masks, h.vertex_count(), r);
    let mut best = max_matching_masks(&masks, r, usize::MAX, seed);
    best.sort_unstable();
    Matching::from_masks(best.into_iter().map(|i| masks[i]))
}

/// Disjoint edges `e_0 ∈ G_0, .., e_{k-1} ∈ G_{k-1}`, by exhaustive
/// backtracking. `None` proves no such matching exists.
pub fn find_rainbow_matching(s: &ColoredSystem, k: usize) -> Result<Option<Matching>> {
    if k > s.p() {
        return Err(Error::InvalidRequest(format!(
            "rainbow matching of size {k} needs {k} layers, system has {}",
            s.p()
        )));
    }
    let layers: Vec<Vec<u64>> = s.layers()[..k]
        .iter()
        .map(|g| g.edge_masks())
        .collect();
    fn go(layers: &[Vec<u64>], i: usize, used: u64, acc: &mut Vec<u64>) -> bool {
        if i == layers.len() {
            return true;
        }
        for &m in &layers[i] {
            if m & used == 0 {
                acc.push(m);
                if go(layers, i + 1, used | m, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    Ok(go(&layers, 0, 0, &mut acc).then(|| {
        let mut m = Matching::from_masks(acc);
        m.layers = Some((0..k).collect());
        m
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Graph, TripleSystem};

    /// Maximum over all subsets of pairwise disjoint edges.
    fn brute_nu(masks: &[u64]) -> usize {
        let m = masks.len();
        (0u32..1 << m)
            .filter_map(|sub| {
                let mut used = 0u64;
                for (i, &e) in masks.iter().enumerate() {
                    if sub >> i & 1 == 1 {
                        if used & e != 0 {
                            return None;
                        }
                        used |= e;
                    }
                }
                Some(sub.count_ones() as usize)
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn two_disjoint_triples() {
        let h = TripleSystem::from_edges(6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let m = matching_number(&h);
        assert_eq!(m.size(), 2);
        assert!(m.is_valid());
    }

    #[test]
    fn empty_system_has_nu_zero() {
        assert_eq!(matching_number(&TripleSystem::empty(4).unwrap()).size(), 0);
        assert_eq!(matching_number(&Graph::empty(4).unwrap()).size(), 0);
    }

    #[test]
    fn agrees_with_subset_enumeration_on_small_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..=9);
            let mut all = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        all.push([a, b, c]);
                    }
                }
            }
            let chosen: Vec<[usize; 3]> = all
                .into_iter()
                .filter(|_| rng.gen_bool(0.25))
                .take(18)
                .collect();
            let h = TripleSystem::from_edges(n, chosen).unwrap();
            let m = matching_number(&h);
            assert!(m.is_valid());
            assert_eq!(m.size(), brute_nu(&h.edge_masks()), "{h:?}");
        }
    }

    #[test]
    fn greedy_extension_is_a_matching() {
        let h = TripleSystem::from_edges(
            9,
            [[0, 3, 4], [0, 5, 6], [1, 3, 7], [1, 5, 8], [2, 4, 6], [2, 7, 8]],
        )
        .unwrap();
        let g = greedy_extension_matching(&h);
        assert!(g.is_valid());
        assert!(g.size() <= matching_number(&h).size());
    }

    #[test]
    fn rainbow_matching_examples() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = ColoredSystem::uniform(&k4, 2).unwrap();
        let m = find_rainbow_matching(&s, 2).unwrap().unwrap();
        assert!(m.is_valid());
        assert_eq!(m.edges, vec![vec![0, 1], vec![2, 3]]);

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = ColoredSystem::uniform(&star, 2).unwrap();
        assert_eq!(find_rainbow_matching(&s, 2).unwrap(), None);
        assert!(matches!(
            find_rainbow_matching(&s, 3),
            Err(Error::InvalidRequest(_))
        ));
    }
}
