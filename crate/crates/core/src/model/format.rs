//! Plain-text edge lists.
//!
//! ```text
//! u <n> <r>          # r in {2, 3}
//! 0 1 2              # one edge per line, ascending vertices
//!
//! c <n> <p>          # colored system of p graph layers
//! layer 0
//! 0 1
//! layer 1
//! ```
//!
//! A colored header may carry a trailing `3` (`c <n> <p> 3`) for systems of
//! 3-graph layers. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::{ColoredSystem, Graph, GraphBuilder, TripleSystem};
use crate::error::{Error, Result};

/// Any object the edge-list format can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeList {
    Graph(Graph),
    Triples(TripleSystem),
    Colored(ColoredSystem),
    ColoredTriples(Vec<TripleSystem>),
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn parse_edge(toks: &[&str], r: usize, n: usize, line: usize) -> Result<Vec<usize>> {
    if toks.len() != r {
        return Err(perr(line, format!("expected {r} vertices, got {}", toks.len())));
    }
    let vs = toks
        .iter()
        .map(|t| parse_usize(t, line))
        .collect::<Result<Vec<_>>>()?;
    if vs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(perr(line, "edge vertices must be strictly ascending"));
    }
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return Err(perr(line, format!("vertex {v} out of range for n = {n}")));
    }
    Ok(vs)
}

fn build(n: usize, r: usize, edges: Vec<(usize, Vec<usize>)>) -> Result<EdgeListLayer> {
    if r == 2 {
        let mut b = GraphBuilder::new(n)?;
        for (line, e) in edges {
            if !b.add_edge(e[0], e[1])? {
                return Err(perr(line, "duplicate edge"));
            }
        }
        Ok(EdgeListLayer::Graph(b.build()))
    } else {
        let lines: Vec<usize> = edges.iter().map(|(l, _)| *l).collect();
        let triples = edges.into_iter().map(|(_, e)| [e[0], e[1], e[2]]);
        match TripleSystem::from_edges(n, triples) {
            Ok(h) => Ok(EdgeListLayer::Triples(h)),
            Err(Error::DuplicateEdge(e)) => Err(perr(
                lines.last().copied().unwrap_or(0),
                format!("duplicate edge {e:?}"),
            )),
            Err(e) => Err(e),
        }
    }
}

enum EdgeListLayer {
    Graph(Graph),
    Triples(TripleSystem),
}

/// Parses the edge-list format.
pub fn parse(text: &str) -> Result<EdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| perr(0, "empty input"))?;
    let htoks: Vec<&str> = header.split_whitespace().collect();
    match htoks.first().copied() {
        Some("u") => {
            if htoks.len() != 3 {
                return Err(perr(hline, "header must be `u <n> <r>`"));
            }
            let n = parse_usize(htoks[1], hline)?;
            let r = parse_usize(htoks[2], hline)?;
            if r != 2 && r != 3 {
                return Err(perr(hline, format!("uniformity {r} is not 2 or 3")));
            }
            super::check_n(n).map_err(|e| perr(hline, e.to_string()))?;
            let mut edges = Vec::new();
            for (ln, l) in lines {
                let toks: Vec<&str> = l.split_whitespace().collect();
                edges.push((ln, parse_edge(&toks, r, n, ln)?));
            }
            Ok(match build(n, r, edges)? {
                EdgeListLayer::Graph(g) => EdgeList::Graph(g),
                EdgeListLayer::Triples(h) => EdgeList::Triples(h),
            })
        }
        Some("c") => {
            if htoks.len() != 3 && htoks.len() != 4 {
                return Err(perr(hline, "header must be `c <n> <p>` or `c <n> <p> 3`"));
            }
            let n = parse_usize(htoks[1], hline)?;
            let p = parse_usize(htoks[2], hline)?;
            let r = match htoks.get(3) {
                None => 2,
                Some(t) => parse_usize(t, hline)?,
            };
            if r != 2 && r != 3 {
                return Err(perr(hline, format!("uniformity {r} is not 2 or 3")));
            }
            if p == 0 {
                return Err(perr(hline, "a colored system needs at least one layer"));
            }
            super::check_n(n).map_err(|e| perr(hline, e.to_string()))?;
            let mut layers: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); p];
            let mut seen = vec![false; p];
            let mut current: Option<usize> = None;
            for (ln, l) in lines {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks[0] == "layer" {
                    if toks.len() != 2 {
                        return Err(perr(ln, "expected `layer <i>`"));
                    }
                    let i = parse_usize(toks[1], ln)?;
                    if i >= p {
                        return Err(perr(ln, format!("layer {i} out of range for p = {p}")));
                    }
                    if seen[i] {
                        return Err(perr(ln, format!("layer {i} declared twice")));
                    }
                    seen[i] = true;
                    current = Some(i);
                    continue;
                }
                let i = current.ok_or_else(|| perr(ln, "edge before any `layer` header"))?;
                layers[i].push((ln, parse_edge(&toks, r, n, ln)?));
            }
            let built = layers
                .into_iter()
                .map(|edges| build(n, r, edges))
                .collect::<Result<Vec<_>>>()?;
            if r == 2 {
                let gs = built
                    .into_iter()
                    .map(|l| match l {
                        EdgeListLayer::Graph(g) => g,
                        EdgeListLayer::Triples(_) => unreachable!(),
                    })
                    .collect();
                Ok(EdgeList::Colored(ColoredSystem::new(gs)?))
            } else {
                let hs = built
                    .into_iter()
                    .map(|l| match l {
                        EdgeListLayer::Triples(h) => h,
                        EdgeListLayer::Graph(_) => unreachable!(),
                    })
                    .collect();
                Ok(EdgeList::ColoredTriples(hs))
            }
        }
        _ => Err(perr(hline, "header must start with `u` or `c`")),
    }
}

fn write_graph_edges(out: &mut String, g: &Graph) {
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
}

fn write_triple_edges(out: &mut String, h: &TripleSystem) {
    for t in h.edges() {
        let [a, b, c] = t.vertices();
        let _ = writeln!(out, "{a} {b} {c}");
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("u {} 2\n", g.n());
    write_graph_edges(&mut out, g);
    out
}

pub fn write_triples(h: &TripleSystem) -> String {
    let mut out = format!("u {} 3\n", h.n());
    write_triple_edges(&mut out, h);
    out
}

pub fn write_colored(s: &ColoredSystem) -> String {
    let mut out = format!("c {} {}\n", s.n(), s.p());
    for (i, g) in s.layers().iter().enumerate() {
        let _ = writeln!(out, "layer {i}");
        write_graph_edges(&mut out, g);
    }
    out
}

pub fn write_colored_triples(layers: &[TripleSystem]) -> String {
    let n = layers.first().map_or(0, TripleSystem::n);
    let mut out = format!("c {n} {} 3\n", layers.len());
    for (i, h) in layers.iter().enumerate() {
        let _ = writeln!(out, "layer {i}");
        write_triple_edges(&mut out, h);
    }
    out
}

pub fn write(e: &EdgeList) -> String {
    match e {
        EdgeList::Graph(g) => write_graph(g),
        EdgeList::Triples(h) => write_triples(h),
        EdgeList::Colored(s) => write_colored(s),
        EdgeList::ColoredTriples(l) => write_colored_triples(l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_exact_bytes() {
        let g = Graph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(write_graph(&g), "u 3 2\n0 1\n1 2\n");
        let h = TripleSystem::from_edges(5, [[2, 3, 4], [0, 1, 2]]).unwrap();
        assert_eq!(write_triples(&h), "u 5 3\n0 1 2\n2 3 4\n");
        let s = ColoredSystem::new(vec![g.clone(), Graph::empty(3).unwrap()]).unwrap();
        assert_eq!(write_colored(&s), "c 3 2\nlayer 0\n0 1\n1 2\nlayer 1\n");
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# a path\nu 4 2\n\n0 1  # first\n1 2\n";
        match parse(text).unwrap() {
            EdgeList::Graph(g) => assert_eq!(g.edge_count(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn colored_round_trip() {
        let text = "c 4 2\nlayer 0\n0 1\nlayer 1\n2 3\n0 3\n";
        let parsed = parse(text).unwrap();
        let EdgeList::Colored(s) = &parsed else { panic!() };
        assert_eq!(s.layer(1).edge_count(), 2);
        assert_eq!(parse(&write(&parsed)).unwrap(), parsed);
        let t = "c 5 2 3\nlayer 1\n0 1 2\n";
        let EdgeList::ColoredTriples(l) = parse(t).unwrap() else { panic!() };
        assert_eq!((l[0].len(), l[1].len()), (0, 1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = |t: &str| match parse(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("u 4 2\n0 1\n2 1\n"), 3);
        assert_eq!(err("u 4 2\n0 4\n"), 2);
        assert_eq!(err("u 4 4\n"), 1);
        assert_eq!(err("u 4 3\n0 1\n"), 2);
        assert_eq!(err("c 4 2\n0 1\n"), 2);
        assert_eq!(err("c 4 2\nlayer 2\n"), 2);
        assert_eq!(err("u 4 2\n0 1\n0 1\n"), 3);
        assert_eq!(err(""), 0);
    }
}
