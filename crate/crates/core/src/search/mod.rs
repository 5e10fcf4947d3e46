//! Exact extremal search: branch and bound over candidate edges with
//! incremental pattern checks, a matching bound, and isomorph rejection at
//! shallow vertex-prefix boundaries.
//!
//! Budgets count expanded nodes, so results are reproducible. Wall time is
//! reported in the statistics but never consulted.

mod engine;
mod local;
mod state;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::canon::{canonize, relabel};
use crate::constructions::h3;
use crate::detectors::{
    find_rainbow_triangle, find_two_colored_f5, find_two_colored_triangle, has_clique, is_f5_free,
    is_triangle_free, matching_number,
};
use crate::error::{Error, Result};
use crate::formulas::{colored_f5_cap, h3_conjecture, BoundValue};
use crate::model::vertex_set::bits;
use crate::model::{check_n, ColoredSystem, Graph, TripleSystem, UniformEdges};

use engine::{can_canonize, Engine, Mode};

pub const DEFAULT_MEMO_DEPTH: usize = 6;

/// A forbidden configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    F5,
    Triangle,
    /// `K_q` inside one layer.
    Clique(usize),
    TwoColoredTriangle,
    RainbowTriangle,
    TwoColoredF5,
}

impl Pattern {
    pub fn uniformity(self) -> usize {
        match self {
            Pattern::F5 | Pattern::TwoColoredF5 => 3,
            _ => 2,
        }
    }

    /// Fewest layers for which the pattern is meaningful.
    pub fn min_layers(self) -> usize {
        match self {
            Pattern::TwoColoredTriangle | Pattern::TwoColoredF5 => 2,
            Pattern::RainbowTriangle => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::F5 => f.write_str("f5"),
            Pattern::Triangle => f.write_str("triangle"),
            Pattern::Clique(q) => write!(f, "k{q}"),
            Pattern::TwoColoredTriangle => f.write_str("2col-triangle"),
            Pattern::RainbowTriangle => f.write_str("rainbow-triangle"),
            Pattern::TwoColoredF5 => f.write_str("2col-f5"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "f5" => Pattern::F5,
            "triangle" | "k3" => Pattern::Triangle,
            "2col" | "2col-triangle" => Pattern::TwoColoredTriangle,
            "rainbow" | "rainbow-triangle" => Pattern::RainbowTriangle,
            "2col-f5" => Pattern::TwoColoredF5,
            _ => match t.strip_prefix('k').and_then(|q| q.parse::<usize>().ok()) {
                Some(q) if q >= 3 => Pattern::Clique(q),
                _ => return Err(Error::InvalidParameter(format!("unknown pattern `{s}`"))),
            },
        })
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Constraint bundle for an extremal search. The objective is always the
/// total edge count over all layers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchProblem {
    pub n: usize,
    pub uniformity: usize,
    pub forbidden: Vec<Pattern>,
    pub nu_max: Option<usize>,
    pub layers: usize,
}

impl SearchProblem {
    pub fn new(n: usize, uniformity: usize) -> Self {
        SearchProblem {
            n,
            uniformity,
            forbidden: Vec::new(),
            nu_max: None,
            layers: 1,
        }
    }

    pub fn forbid(mut self, p: Pattern) -> Self {
        if !self.forbidden.contains(&p) {
            self.forbidden.push(p);
            self.forbidden.sort();
        }
        self
    }

    pub fn with_nu_max(mut self, s: usize) -> Self {
        self.nu_max = Some(s);
        self
    }

    pub fn with_layers(mut self, p: usize) -> Self {
        self.layers = p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if !(2..=3).contains(&self.uniformity) {
            return Err(Error::InvalidRequest(format!("uniformity must be 2 or 3, got {}", self.uniformity)));
        }
        if self.layers == 0 {
            return Err(Error::InvalidRequest("at least one layer required".into()));
        }
        for &f in &self.forbidden {
            if f.uniformity() != self.uniformity {
                return Err(Error::InvalidRequest(format!(
                    "pattern {f} needs uniformity {}",
                    f.uniformity()
                )));
            }
            if self.layers < f.min_layers() {
                return Err(Error::InvalidRequest(format!("pattern {f} needs at least {} layers", f.min_layers())));
            }
        }
        Ok(())
    }
}

/// Search limits and tuning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node budget; `None` searches to completion.
    pub max_nodes: Option<u64>,
    /// Isomorph rejection applies at decision depths up to this cutoff.
    pub memo_depth: usize,
    /// Only solutions strictly larger than this are sought.
    pub lower_bound: Option<usize>,
    /// Local-search moves tried when the exact phase does not finish.
    pub local_moves: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_nodes: None,
            memo_depth: DEFAULT_MEMO_DEPTH,
            lower_bound: None,
            local_moves: 0,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(max_nodes: Option<u64>) -> Self {
        SearchConfig {
            max_nodes,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub bound_prunes: u64,
    pub rejections: u64,
    pub memo_hits: u64,
    pub memo_entries: u64,
    pub wall_ms: u64,
}

impl SearchStats {
    /// The statistics without wall time, for reproducible comparisons.
    pub fn deterministic(&self) -> SearchStats {
        SearchStats {
            wall_ms: 0,
            ..self.clone()
        }
    }
}

/// One extremal configuration, relabeled canonically when `n <= 10`.
///
/// Serializes as an edge list when there is a single layer and as a list of
/// per-layer edge lists otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub uniformity: usize,
    pub layers: Vec<Vec<Vec<usize>>>,
    pub canonical: Option<Vec<u8>>,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.layers.len() == 1 {
            self.layers[0].serialize(s)
        } else {
            self.layers.serialize(s)
        }
    }
}

fn mask_vertices(m: u64) -> Vec<usize> {
    bits(m).collect()
}

impl Witness {
    pub(crate) fn from_masks(n: usize, r: usize, layers: &[Vec<u64>]) -> Self {
        let (masks, canonical) = if can_canonize(n, layers.len()) {
            let c = canonize(n, r, layers).expect("size checked");
            let masks: Vec<Vec<u64>> = c
                .layer_order
                .iter()
                .map(|&old| layers[old].iter().map(|&m| relabel(m, &c.position_of)).collect())
                .collect();
            (masks, Some(c.bytes))
        } else {
            (layers.to_vec(), None)
        };
        let layers = masks
            .iter()
            .map(|l| {
                let mut es: Vec<Vec<usize>> = l.iter().map(|&m| mask_vertices(m)).collect();
                es.sort();
                es
            })
            .collect();
        Witness {
            n,
            uniformity: r,
            layers,
            canonical,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn layer_graph(&self, i: usize) -> Result<Graph> {
        if self.uniformity != 2 {
            return Err(Error::InvalidRequest("witness is not a graph".into()));
        }
        Graph::from_edges(self.n, self.layers[i].iter().map(|e| (e[0], e[1])))
    }

    pub fn layer_triples(&self, i: usize) -> Result<TripleSystem> {
        if self.uniformity != 3 {
            return Err(Error::InvalidRequest("witness is not a triple system".into()));
        }
        TripleSystem::from_edges(self.n, self.layers[i].iter().map(|e| [e[0], e[1], e[2]]))
    }

    pub fn to_colored(&self) -> Result<ColoredSystem> {
        ColoredSystem::new((0..self.layers.len()).map(|i| self.layer_graph(i)).collect::<Result<_>>()?)
    }

    /// Re-checks every constraint of `prob` with the standalone detectors.
    pub fn satisfies(&self, prob: &SearchProblem) -> bool {
        self.check(prob).unwrap_or(false)
    }

    fn check(&self, prob: &SearchProblem) -> Result<bool> {
        if self.n != prob.n || self.uniformity != prob.uniformity || self.layers.len() != prob.layers {
            return Ok(false);
        }
        let p = self.layers.len();
        if prob.uniformity == 2 {
            let gs: Vec<Graph> = (0..p).map(|i| self.layer_graph(i)).collect::<Result<_>>()?;
            for &f in &prob.forbidden {
                let ok = match f {
                    Pattern::Triangle => gs.iter().all(is_triangle_free),
                    Pattern::Clique(q) => gs.iter().all(|g| !has_clique(g, q)),
                    Pattern::TwoColoredTriangle => find_two_colored_triangle(&self.to_colored()?)?.is_none(),
                    Pattern::RainbowTriangle => find_rainbow_triangle(&self.to_colored()?)?.is_none(),
                    _ => false,
                };
                if !ok {
                    return Ok(false);
                }
            }
            if let Some(s) = prob.nu_max {
                if gs.iter().any(|g| matching_number(g).size() > s) {
                    return Ok(false);
                }
            }
        } else {
            let hs: Vec<TripleSystem> = (0..p).map(|i| self.layer_triples(i)).collect::<Result<_>>()?;
            for &f in &prob.forbidden {
                let ok = match f {
                    Pattern::F5 => hs.iter().all(is_f5_free),
                    Pattern::TwoColoredF5 => find_two_colored_f5(&hs)?.is_none(),
                    _ => false,
                };
                if !ok {
                    return Ok(false);
                }
            }
            if let Some(s) = prob.nu_max {
                if hs.iter().any(|h| matching_number(h).size() > s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub problem: SearchProblem,
    /// The proved optimum when `exhaustive`, else the best size found (or
    /// the supplied lower bound if nothing beat it).
    pub optimum: usize,
    pub exhaustive: bool,
    /// Attaining configurations. Empty when a supplied lower bound was never
    /// exceeded.
    pub witnesses: Vec<Witness>,
    pub stats: SearchStats,
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis().min(u64::MAX as u128) as u64
}

/// Maximizes the total edge count subject to `prob`.
pub fn extremal_search(prob: &SearchProblem, cfg: &SearchConfig) -> Result<SearchResult> {
    prob.validate()?;
    let t = Instant::now();
    let mut e = Engine::new(prob, Mode::Maximize, cfg.max_nodes, cfg.memo_depth, cfg.lower_bound);
    e.run();
    let mut stats = std::mem::take(&mut e.stats);
    stats.wall_ms = elapsed_ms(t);
    let witnesses = e
        .best_layers
        .as_ref()
        .map(|l| vec![Witness::from_masks(prob.n, prob.uniformity, l)])
        .unwrap_or_default();
    Ok(SearchResult {
        problem: prob.clone(),
        optimum: e.best,
        exhaustive: !e.aborted,
        witnesses,
        stats,
    })
}

/// Maximizes `Σ e(G_i)` over `p` graphs on `n` vertices avoiding a colored
/// triangle pattern.
pub fn colored_extremal_search(n: usize, p: usize, pattern: Pattern, cfg: &SearchConfig) -> Result<SearchResult> {
    if !matches!(pattern, Pattern::TwoColoredTriangle | Pattern::RainbowTriangle) {
        return Err(Error::InvalidRequest(format!("{pattern} is not a colored triangle pattern")));
    }
    extremal_search(&SearchProblem::new(n, 2).with_layers(p).forbid(pattern), cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessResult {
    pub optimum: usize,
    /// One representative per isomorphism class, in canonical byte order.
    pub classes: Vec<Witness>,
    pub exhaustive: bool,
    pub stats: SearchStats,
}

/// Enumerates every isomorphism class attaining the proved optimum of
/// `result`.
pub fn uniqueness_check(result: &SearchResult, cfg: &SearchConfig) -> Result<UniquenessResult> {
    if !result.exhaustive {
        return Err(Error::InvalidRequest("uniqueness needs an exhaustively proved optimum".into()));
    }
    if result.witnesses.is_empty() {
        return Err(Error::InvalidRequest("optimum was only a supplied lower bound".into()));
    }
    let prob = &result.problem;
    let t = Instant::now();
    let mut e = Engine::new(prob, Mode::Enumerate(result.optimum), cfg.max_nodes, cfg.memo_depth, None);
    e.run();
    let mut stats = std::mem::take(&mut e.stats);
    stats.wall_ms = elapsed_ms(t);
    let mut classes: Vec<Witness> = e
        .found
        .values()
        .map(|l| Witness::from_masks(prob.n, prob.uniformity, l))
        .collect();
    classes.sort_by(|a, b| a.canonical.cmp(&b.canonical).then_with(|| a.layers.cmp(&b.layers)));
    classes.dedup();
    Ok(UniquenessResult {
        optimum: result.optimum,
        classes,
        exhaustive: !e.aborted,
        stats,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapVerdict {
    /// Exhaustive and the optimum does not exceed the cap.
    WithinCap,
    /// A witness above the cap was found.
    ExceedsCap,
    /// Not exhaustive and nothing above the cap was found.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredF5Report {
    pub n: usize,
    pub p: usize,
    pub result: SearchResult,
    pub cap: BoundValue,
    pub verdict: CapVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
    pub local_moves: u64,
}

/// Maximizes `Σ |H_i|` over `p` triple systems on `n` vertices that contain
/// no F5 with edges from exactly two layers. With one layer, plain F5 is
/// forbidden instead.
pub fn colored_f5_search(n: usize, p: usize, cfg: &SearchConfig) -> Result<ColoredF5Report> {
    let prob = if p == 1 {
        SearchProblem::new(n, 3).forbid(Pattern::F5)
    } else {
        SearchProblem::new(n, 3).with_layers(p).forbid(Pattern::TwoColoredF5)
    };
    let mut result = extremal_search(&prob, cfg)?;
    let mut local_moves = 0;
    if !result.exhaustive && cfg.local_moves > 0 {
        let start: Vec<Vec<u64>> = vec![Vec::new(); p];
        let out = local::local_search(&prob, &start, cfg.local_moves, cfg.seed);
        local_moves = out.moves;
        if out.best > result.optimum {
            result.optimum = out.best;
            result.witnesses = vec![Witness::from_masks(n, 3, &out.layers)];
        }
    }
    let cap = colored_f5_cap(n as u64, p as u64);
    let above = result.optimum as u128 > cap.value && !result.witnesses.is_empty();
    let verdict = if above {
        CapVerdict::ExceedsCap
    } else if result.exhaustive {
        CapVerdict::WithinCap
    } else {
        CapVerdict::Undetermined
    };
    Ok(ColoredF5Report {
        n,
        p,
        counterexample: above.then(|| result.witnesses[0].clone()),
        result,
        cap,
        verdict,
        local_moves,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// The exact phase covered the whole tree without beating the bound.
    Confirmed,
    NoImprovementFound,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub s: usize,
    pub n: usize,
    /// Size of `h3(n, s)`, re-checked F5-free with matching number `<= s`.
    pub lower_bound: usize,
    pub conjectured: BoundValue,
    pub best_found: usize,
    pub exhaustive: bool,
    pub nodes: u64,
    pub local_moves: u64,
    pub verdict: ProbeVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
}

/// Looks for an F5-free 3-graph with matching number at most `s` that beats
/// `h3(n, s)`. The node budget is spent once on branch and bound and once
/// more on local search moves started from `h3(n, s)`; budget 0 only
/// certifies the lower bound.
pub fn conjecture_5_1_probe(s: usize, n: usize, budget: u64, seed: u64) -> Result<ProbeReport> {
    if s < 3 || n < 3 * (s + 1) {
        return Err(Error::InvalidRequest(format!("probe needs s >= 3 and n >= 3(s+1), got s={s}, n={n}")));
    }
    let base = h3(n, s)?;
    if !is_f5_free(&base) || matching_number(&base).size() > s {
        return Err(Error::InvalidRequest("lower-bound construction failed its own checks".into()));
    }
    let lb = base.len();
    let prob = SearchProblem::new(n, 3).forbid(Pattern::F5).with_nu_max(s);
    let mut report = ProbeReport {
        s,
        n,
        lower_bound: lb,
        conjectured: h3_conjecture(n as u64, s as u64),
        best_found: lb,
        exhaustive: false,
        nodes: 0,
        local_moves: 0,
        verdict: ProbeVerdict::NoImprovementFound,
        counterexample: None,
    };
    if budget == 0 {
        return Ok(report);
    }
    let cfg = SearchConfig {
        max_nodes: Some(budget),
        lower_bound: Some(lb),
        ..SearchConfig::default()
    };
    let exact = extremal_search(&prob, &cfg)?;
    report.nodes = exact.stats.nodes;
    report.exhaustive = exact.exhaustive;
    let mut best: Option<Witness> = exact.witnesses.into_iter().next();
    if best.is_none() && !exact.exhaustive {
        let start = vec![base.edge_masks()];
        let out = local::local_search(&prob, &start, budget, seed);
        report.local_moves = out.moves;
        if out.best > lb {
            best = Some(Witness::from_masks(n, 3, &out.layers));
        }
    }
    if let Some(w) = best.filter(|w| w.edge_count() > lb && w.satisfies(&prob)) {
        report.best_found = w.edge_count();
        report.verdict = ProbeVerdict::Counterexample;
        report.counterexample = Some(w);
    } else if report.exhaustive {
        report.verdict = ProbeVerdict::Confirmed;
    }
    Ok(report)
}
