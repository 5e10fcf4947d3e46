mod common;

use std::collections::BTreeSet;

use common::*;
use exturan_core::search::{
    colored_extremal_search, extremal_search, uniqueness_check, Pattern, SearchConfig, SearchProblem, SearchResult,
};

fn classes(r: &SearchResult, cfg: &SearchConfig) -> BTreeSet<Vec<u8>> {
    let u = uniqueness_check(r, cfg).unwrap();
    assert!(u.exhaustive);
    for w in &u.classes {
        assert!(w.satisfies(&r.problem));
        assert_eq!(w.edge_count(), r.optimum);
    }
    u.classes.iter().map(|w| w.canonical.clone().unwrap()).collect()
}

fn solve(prob: &SearchProblem, cfg: &SearchConfig) -> (u32, BTreeSet<Vec<u8>>) {
    let r = extremal_search(prob, cfg).unwrap();
    assert!(r.exhaustive);
    (r.optimum as u32, classes(&r, cfg))
}

#[test]
fn triangle_free_matches_enumeration() {
    for n in 3..=6 {
        let prob = SearchProblem::new(n, 2).forbid(Pattern::Triangle);
        assert_eq!(solve(&prob, &SearchConfig::default()), graph_oracle(n, triangle_free_mask(n)), "n={n}");
    }
}

#[test]
fn bounded_matching_matches_enumeration() {
    for n in 4..=6 {
        for s in 1..=2 {
            let prob = SearchProblem::new(n, 2).with_nu_max(s);
            let want = graph_oracle(n, |m| nu_of_pairs(n, m) <= s);
            assert_eq!(solve(&prob, &SearchConfig::default()), want, "n={n} s={s}");

            let prob = prob.forbid(Pattern::Triangle);
            let tf = triangle_free_mask(n);
            let want = graph_oracle(n, |m| tf(m) && nu_of_pairs(n, m) <= s);
            assert_eq!(solve(&prob, &SearchConfig::default()), want, "triangle-free n={n} s={s}");
        }
    }
}

#[test]
fn f5_free_matches_enumeration_n5() {
    let prob = SearchProblem::new(5, 3).forbid(Pattern::F5);
    assert_eq!(solve(&prob, &SearchConfig::default()), f5_oracle(5));
}

#[test]
fn two_colored_matches_enumeration() {
    for (n, p) in [(3, 2), (4, 2), (3, 3), (4, 3)] {
        let prob = SearchProblem::new(n, 2).with_layers(p).forbid(Pattern::TwoColoredTriangle);
        assert_eq!(solve(&prob, &SearchConfig::default()), two_colored_oracle(n, p), "n={n} p={p}");
    }
}

#[test]
fn rainbow_matches_enumeration() {
    for n in 3..=4 {
        let r = colored_extremal_search(n, 3, Pattern::RainbowTriangle, &SearchConfig::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.optimum as u32, rainbow_oracle_3(n), "n={n}");
    }
}

#[test]
fn traversal_settings_do_not_change_results() {
    let probs = [
        SearchProblem::new(7, 2).forbid(Pattern::Triangle),
        SearchProblem::new(6, 2).with_nu_max(2),
        SearchProblem::new(6, 3).forbid(Pattern::F5),
        SearchProblem::new(5, 2).with_layers(2).forbid(Pattern::TwoColoredTriangle),
    ];
    for prob in &probs {
        let base = solve(prob, &SearchConfig::default());
        for memo_depth in [0, 3, 12, 40] {
            let cfg = SearchConfig {
                memo_depth,
                ..SearchConfig::default()
            };
            assert_eq!(solve(prob, &cfg), base, "{prob:?} memo_depth={memo_depth}");
        }
    }
}

#[test]
fn optimum_is_monotone() {
    let opt = |prob: SearchProblem| extremal_search(&prob, &SearchConfig::default()).unwrap().optimum;
    for s in 1..=3 {
        let vals: Vec<usize> = (3..=7).map(|n| opt(SearchProblem::new(n, 2).with_nu_max(s))).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "s={s}: {vals:?}");
    }
    for n in 4..=7 {
        let vals: Vec<usize> = (0..=3)
            .map(|s| opt(SearchProblem::new(n, 2).forbid(Pattern::Triangle).with_nu_max(s)))
            .collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "n={n}: {vals:?}");
    }
    let f5: Vec<usize> = (3..=7).map(|n| opt(SearchProblem::new(n, 3).forbid(Pattern::F5))).collect();
    assert!(f5.windows(2).all(|w| w[0] <= w[1]), "{f5:?}");
}

#[test]
fn f5_with_matching_bound_small() {
    // ν ≤ 1 with F5 forbidden: an intersecting F5-free family
    for n in 5..=7 {
        let prob = SearchProblem::new(n, 3).forbid(Pattern::F5).with_nu_max(1);
        let r = extremal_search(&prob, &SearchConfig::default()).unwrap();
        assert!(r.exhaustive);
        assert!(r.witnesses[0].satisfies(&prob));
        let star = (n - 1) * (n - 2) / 2;
        assert!(r.optimum >= star, "n={n}: {} < {star}", r.optimum);
    }
}
