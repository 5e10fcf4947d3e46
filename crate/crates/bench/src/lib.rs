//! Deterministic inputs shared by the benchmarks.

use exturan_core::constructions::{full_star, h3, turan_3graph};
use exturan_core::search::{Pattern, SearchProblem};
use exturan_core::TripleSystem;

/// F5-free worst case for the detector: every pair is scanned with no early
/// exit.
pub fn f5_free_host(n: usize) -> TripleSystem {
    h3(n, 3).expect("valid h3 parameters")
}

/// `h3` plus one triple inside the large part, which creates F5 copies.
pub fn f5_host(n: usize) -> TripleSystem {
    let base = h3(n, 3).expect("valid h3 parameters");
    let mut edges: Vec<[usize; 3]> = base.edges().iter().map(|t| t.vertices()).collect();
    edges.push([n - 3, n - 2, n - 1]);
    TripleSystem::from_edges(n, edges).expect("vertices in range")
}

/// A dense system with matching number `n / 3`.
pub fn matching_host(n: usize) -> TripleSystem {
    turan_3graph(n, 3).expect("valid Turán parameters")
}

/// A highly symmetric system, the hard case for canonical labeling.
pub fn canon_host(n: usize) -> TripleSystem {
    full_star(n, 0).expect("valid star parameters")
}

pub fn mantel_problem(n: usize) -> SearchProblem {
    SearchProblem::new(n, 2).forbid(Pattern::Triangle)
}
