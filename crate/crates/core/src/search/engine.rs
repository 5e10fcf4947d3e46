//! Depth-first branch and bound over candidate edges.

use std::collections::{BTreeMap, HashSet};

use crate::canon::{canonize, MAX_CANON_LAYERS, MAX_CANON_VERTICES};

use super::state::{candidates, Cand, Workspace};
use super::{SearchProblem, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    Maximize,
    /// Collect every isomorphism class with exactly this many edges.
    Enumerate(usize),
}

/// Memo tables stop growing past this many entries.
const MEMO_CAPACITY: usize = 1 << 21;

pub(crate) struct Engine {
    ws: Workspace,
    cands: Vec<Cand>,
    /// `boundary[d] = Some(k)` when the first `d` candidates are exactly the
    /// ones inside the vertex prefix `0..k`.
    boundary: Vec<Option<usize>>,
    memo_depth: usize,
    memo: HashSet<Vec<u8>>,
    mode: Mode,
    max_nodes: Option<u64>,
    pub best: usize,
    lower_given: bool,
    pub best_layers: Option<Vec<Vec<u64>>>,
    /// Enumerate mode: canonical bytes (or raw key) to representative.
    pub found: BTreeMap<Vec<u8>, Vec<Vec<u64>>>,
    pub stats: SearchStats,
    pub aborted: bool,
}

pub(crate) fn can_canonize(n: usize, p: usize) -> bool {
    n <= MAX_CANON_VERTICES && p <= MAX_CANON_LAYERS
}

impl Engine {
    pub fn new(prob: &SearchProblem, mode: Mode, max_nodes: Option<u64>, memo_depth: usize, lower: Option<usize>) -> Self {
        let (n, r, p) = (prob.n, prob.uniformity, prob.layers);
        let cands = candidates(n, r, p);
        let mut boundary = vec![None; cands.len() + 1];
        let mut d = 0;
        boundary[0] = Some(0);
        for k in 1..=n {
            // number of candidates inside 0..k
            let inside = cands.iter().filter(|c| c.verts[r - 1] < k).count();
            debug_assert!(inside >= d);
            d = inside;
            boundary[d] = Some(k);
        }
        Engine {
            ws: Workspace::new(prob),
            cands,
            boundary,
            memo_depth,
            memo: HashSet::new(),
            mode,
            max_nodes,
            best: lower.unwrap_or(0),
            lower_given: lower.is_some(),
            best_layers: None,
            found: BTreeMap::new(),
            stats: SearchStats::default(),
            aborted: false,
        }
    }

    pub fn run(&mut self) {
        self.dfs(0);
        self.stats.memo_entries = self.memo.len() as u64;
    }

    fn need(&self) -> usize {
        match self.mode {
            Mode::Maximize => self.best + 1,
            Mode::Enumerate(t) => t,
        }
    }

    /// Whether `count + (admissible remaining candidates) >= need`.
    fn reachable(&self, d: usize, need: usize) -> bool {
        let mut have = self.ws.count();
        if have >= need {
            return true;
        }
        for c in &self.cands[d..] {
            if self.ws.admissible(c, false) {
                have += 1;
                if have >= need {
                    return true;
                }
            }
        }
        false
    }

    fn record(&mut self) {
        let layers = self.ws.snapshot();
        let key = if can_canonize(self.ws.n, self.ws.p) {
            canonize(self.ws.n, self.ws.r, &layers).expect("size checked").bytes
        } else {
            let mut sorted = layers.clone();
            for l in &mut sorted {
                l.sort_unstable();
            }
            sorted.concat().iter().flat_map(|m| m.to_le_bytes()).collect()
        };
        self.found.entry(key).or_insert(layers);
    }

    fn dfs(&mut self, d: usize) {
        if self.aborted {
            return;
        }
        self.stats.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.stats.nodes > m) {
            self.aborted = true;
            return;
        }
        let count = self.ws.count();
        match self.mode {
            Mode::Maximize => {
                if count > self.best || (count == self.best && self.best_layers.is_none() && !self.lower_given) {
                    self.best = count;
                    self.best_layers = Some(self.ws.snapshot());
                }
            }
            Mode::Enumerate(t) => {
                if count == t {
                    self.record();
                    return;
                }
            }
        }
        if d == self.cands.len() {
            return;
        }
        if d > 0 && d <= self.memo_depth {
            if let Some(k) = self.boundary[d] {
                if k >= 3 && k < self.ws.n && k <= MAX_CANON_VERTICES && self.ws.p <= MAX_CANON_LAYERS {
                    let key = canonize(k, self.ws.r, &self.ws.prefix_snapshot(k)).expect("size checked").bytes;
                    if self.memo.contains(&key) {
                        self.stats.memo_hits += 1;
                        return;
                    }
                    if self.memo.len() < MEMO_CAPACITY {
                        self.memo.insert(key);
                    }
                }
            }
        }
        let need = self.need();
        if count + (self.cands.len() - d) < need || !self.reachable(d, need) {
            self.stats.bound_prunes += 1;
            return;
        }
        let c = self.cands[d];
        if self.ws.admissible(&c, true) {
            self.ws.add(&c);
            self.dfs(d + 1);
            self.ws.remove(&c);
        } else {
            self.stats.rejections += 1;
        }
        self.dfs(d + 1);
    }
}
