//! Verification campaigns: flat text specs with one item per line, run
//! against the search engine, the detectors and the closed forms.
//!
//! ```text
//! # comment
//! campaign name=mantel-scan budget=1000000
//! search n=5 forbid=triangle expect=mantel(5) classes=1 extremal=kbip(5)
//! search n=4 layers=2 forbid=2col-triangle expect=2col-mantel(4,2)
//! colored-f5 n=5 p=2
//! probe s=3 n=12 budget=20000 seed=1
//! formula ff(33) expect=1331
//! verify h3(12,3)
//! ```
//!
//! `expect` takes a formula call (see [`crate::formulas::FORMULAS`]) or an
//! integer literal. `extremal` names a construction (see
//! [`crate::constructions::CONSTRUCTIONS`]) that must be the unique optimum,
//! repeated in every layer.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonize;
use crate::constructions::{build, Built};
use crate::detectors::{has_clique, is_f5_free, is_triangle_free, matching_number};
use crate::error::{Error, Result};
use crate::formulas::{self, BoundValue, Source};
use crate::model::UniformEdges;
use crate::search::{
    colored_f5_search, conjecture_5_1_probe, extremal_search, uniqueness_check, CapVerdict, Pattern,
    ProbeVerdict, SearchConfig, SearchProblem, Witness, DEFAULT_MEMO_DEPTH,
};

/// Built-in campaign names and their spec text.
pub const BUILTINS: &[(&str, &str)] = &[
    ("mantel-scan", MANTEL_SCAN),
    ("erdos-gallai", ERDOS_GALLAI),
    ("alon-frankl", ALON_FRANKL),
    ("two-colored-mantel", TWO_COLORED),
    ("rainbow", RAINBOW),
    ("f5-small", F5_SMALL),
    ("constructions", CONSTRUCTIONS_CHECK),
    ("formulas", FORMULA_GOLDENS),
    ("conj52", CONJ52),
    ("conj51", CONJ51),
];

const MANTEL_SCAN: &str = "\
campaign name=mantel-scan
search n=3 forbid=triangle expect=mantel(3) classes=1 extremal=kbip(3)
search n=4 forbid=triangle expect=mantel(4) classes=1 extremal=kbip(4)
search n=5 forbid=triangle expect=mantel(5) classes=1 extremal=kbip(5)
search n=6 forbid=triangle expect=mantel(6) classes=1 extremal=kbip(6)
search n=7 forbid=triangle expect=mantel(7) classes=1 extremal=kbip(7)
search n=8 forbid=triangle expect=mantel(8) classes=1 extremal=kbip(8)
";

const ERDOS_GALLAI: &str = "\
campaign name=erdos-gallai
search n=5 nu=1 expect=eg(5,1)
search n=5 nu=2 expect=eg(5,2)
search n=6 nu=2 expect=eg(6,2)
search n=7 nu=2 expect=eg(7,2)
search n=7 nu=3 expect=eg(7,3)
";

const ALON_FRANKL: &str = "\
campaign name=alon-frankl
search n=5 forbid=triangle nu=2 expect=af(5,2,2)
search n=6 forbid=triangle nu=2 expect=af(6,2,2)
search n=7 forbid=triangle nu=2 expect=af(7,2,2)
";

const TWO_COLORED: &str = "\
campaign name=two-colored-mantel
search n=4 layers=2 forbid=2col-triangle expect=2col-mantel(4,2) classes=1 extremal=kbip(4)
search n=5 layers=2 forbid=2col-triangle expect=2col-mantel(5,2) classes=1 extremal=kbip(5)
search n=4 layers=3 forbid=2col-triangle expect=2col-mantel(4,3) classes=1 extremal=kbip(4)
search n=5 layers=3 forbid=2col-triangle expect=2col-mantel(5,3) classes=1 extremal=kbip(5)
";

const RAINBOW: &str = "\
campaign name=rainbow
search n=4 layers=3 forbid=rainbow-triangle expect=rainbow-mantel(4,3)
search n=5 layers=3 forbid=rainbow-triangle expect=rainbow-mantel(5,3)
";

const F5_SMALL: &str = "\
campaign name=f5-small
search n=5 r=3 forbid=f5 expect=6 classes=1 extremal=star(5,0)
search n=6 r=3 forbid=f5 expect=10 classes=1 extremal=star(6,0)
search n=7 r=3 forbid=f5 expect=15 classes=1 extremal=star(7,0)
";

const CONSTRUCTIONS_CHECK: &str = "\
campaign name=constructions
verify h3(12,3)
verify h3(13,3)
verify h3(20,5)
verify star(9,0)
verify turan3(9,3)
verify turan(10,3)
verify af(12,3,2)
verify kbip(9)
";

const FORMULA_GOLDENS: &str = "\
campaign name=formulas
formula ff(33) expect=1331
formula main(150,4) expect=21316
formula rainbow-mantel(5,3) expect=20
formula eg(7,2) expect=11
formula af(7,2,2) expect=10
formula conj-h3(13,3) expect=75
formula conj-2col-f5(5,2) expect=10
";

const CONJ52: &str = "\
campaign name=conj52
colored-f5 n=4 p=2
colored-f5 n=5 p=2
";

const CONJ51: &str = "\
campaign name=conj51
probe s=3 n=12 budget=20000 seed=1
probe s=3 n=13 budget=0
";

/// Alternative names accepted by [`builtin`].
pub const ALIASES: &[(&str, &str)] = &[("paper-thm17", "two-colored-mantel")];

pub fn builtin(name: &str) -> Option<&'static str> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, n)| *n);
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A formula call or a literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Formula(String, Vec<u64>),
    Literal(u128),
}

impl Expect {
    fn evaluate(&self) -> Result<BoundValue> {
        match self {
            Expect::Formula(name, params) => formulas::evaluate(name, params),
            Expect::Literal(v) => Ok(BoundValue {
                value: *v,
                valid: true,
                source: Source::Given,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemSpec {
    Search {
        problem: SearchProblem,
        expect: Option<Expect>,
        classes: Option<usize>,
        extremal: Option<(String, Vec<usize>)>,
        budget: Option<u64>,
    },
    ColoredF5 {
        n: usize,
        p: usize,
        budget: Option<u64>,
    },
    Probe {
        s: usize,
        n: usize,
        budget: Option<u64>,
        seed: u64,
    },
    Formula {
        name: String,
        params: Vec<u64>,
        expect: u128,
    },
    Verify {
        name: String,
        params: Vec<usize>,
    },
}

impl ItemSpec {
    fn kind(&self) -> &'static str {
        match self {
            ItemSpec::Search { .. } => "search",
            ItemSpec::ColoredF5 { .. } => "colored-f5",
            ItemSpec::Probe { .. } => "probe",
            ItemSpec::Formula { .. } => "formula",
            ItemSpec::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub line: usize,
    pub text: String,
    pub spec: ItemSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Campaign {
    pub name: String,
    pub budget: Option<u64>,
    pub memo_depth: usize,
    pub items: Vec<Item>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_call(line: usize, s: &str) -> Result<(String, Vec<u64>)> {
    let (name, rest) = s
        .split_once('(')
        .ok_or_else(|| perr(line, format!("expected `name(args)`, got `{s}`")))?;
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| perr(line, format!("unclosed call `{s}`")))?;
    let params = args
        .split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(|a| a.parse::<u64>().map_err(|_| perr(line, format!("bad integer `{a}`"))))
        .collect::<Result<_>>()?;
    Ok((name.trim().to_string(), params))
}

fn parse_usize_call(line: usize, s: &str) -> Result<(String, Vec<usize>)> {
    let (name, params) = parse_call(line, s)?;
    Ok((name, params.into_iter().map(|v| v as usize).collect()))
}

struct Fields<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
    positional: Vec<&'a str>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, tokens: &[&'a str]) -> Self {
        let mut pairs = Vec::new();
        let mut positional = Vec::new();
        for t in tokens {
            match t.split_once('=') {
                Some((k, v)) => pairs.push((k, v)),
                None => positional.push(*t),
            }
        }
        Fields {
            line,
            pairs,
            positional,
        }
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        let i = self.pairs.iter().position(|(k, _)| *k == key)?;
        Some(self.pairs.remove(i).1)
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        let line = self.line;
        self.take(key)
            .map(|v| v.parse::<T>().map_err(|_| perr(line, format!("bad value for `{key}`: `{v}`"))))
            .transpose()
    }

    fn need<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let line = self.line;
        self.num(key)?.ok_or_else(|| perr(line, format!("missing `{key}`")))
    }

    fn finish(self) -> Result<()> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(perr(self.line, format!("unknown key `{k}`")));
        }
        if let Some(p) = self.positional.first() {
            return Err(perr(self.line, format!("unexpected `{p}`")));
        }
        Ok(())
    }
}

fn positive(line: usize, b: Option<u64>) -> Result<Option<u64>> {
    match b {
        Some(0) => Err(perr(line, "budgets must be positive")),
        b => Ok(b),
    }
}

fn parse_expect(line: usize, v: &str) -> Result<Expect> {
    if let Ok(x) = v.parse::<u128>() {
        return Ok(Expect::Literal(x));
    }
    let (name, params) = parse_call(line, v)?;
    Ok(Expect::Formula(name, params))
}

fn parse_item(line: usize, kind: &str, rest: &[&str]) -> Result<ItemSpec> {
    let mut f = Fields::new(line, rest);
    let spec = match kind {
        "search" => {
            let n = f.need("n")?;
            let r = f.num("r")?.unwrap_or(2);
            let mut problem = SearchProblem::new(n, r).with_layers(f.num("layers")?.unwrap_or(1));
            if let Some(list) = f.take("forbid") {
                for p in list.split(',').filter(|p| !p.is_empty()) {
                    problem = problem.forbid(p.parse::<Pattern>().map_err(|e| perr(line, e.to_string()))?);
                }
            }
            if let Some(s) = f.num("nu")? {
                problem = problem.with_nu_max(s);
            }
            problem.validate().map_err(|e| perr(line, e.to_string()))?;
            let expect = f.take("expect").map(|v| parse_expect(line, v)).transpose()?;
            let classes = f.num("classes")?;
            let extremal = f.take("extremal").map(|v| parse_usize_call(line, v)).transpose()?;
            let budget = positive(line, f.num("budget")?)?;
            ItemSpec::Search {
                problem,
                expect,
                classes,
                extremal,
                budget,
            }
        }
        "colored-f5" => ItemSpec::ColoredF5 {
            n: f.need("n")?,
            p: f.need("p")?,
            budget: positive(line, f.num("budget")?)?,
        },
        "probe" => ItemSpec::Probe {
            s: f.need("s")?,
            n: f.need("n")?,
            budget: f.num("budget")?,
            seed: f.num("seed")?.unwrap_or(0),
        },
        "formula" => {
            let call = f.positional.pop().ok_or_else(|| perr(line, "missing formula call"))?;
            let (name, params) = parse_call(line, call)?;
            let expect = f.need("expect")?;
            ItemSpec::Formula { name, params, expect }
        }
        "verify" => {
            let call = f.positional.pop().ok_or_else(|| perr(line, "missing construction call"))?;
            let (name, params) = parse_usize_call(line, call)?;
            ItemSpec::Verify { name, params }
        }
        other => return Err(perr(line, format!("unknown item kind `{other}`"))),
    };
    f.finish()?;
    Ok(spec)
}

/// Parses a campaign spec. Line numbers in errors are 1-based.
pub fn parse_campaign(text: &str) -> Result<Campaign> {
    let mut c = Campaign {
        name: "unnamed".into(),
        budget: None,
        memo_depth: DEFAULT_MEMO_DEPTH,
        items: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "campaign" {
            let mut f = Fields::new(line, &tokens[1..]);
            if let Some(name) = f.take("name") {
                c.name = name.to_string();
            }
            c.budget = positive(line, f.num("budget")?)?.or(c.budget);
            c.memo_depth = f.num("memo-depth")?.unwrap_or(c.memo_depth);
            f.finish()?;
            continue;
        }
        let spec = parse_item(line, tokens[0], &tokens[1..])?;
        c.items.push(Item {
            line,
            text: tokens.join(" "),
            spec,
        });
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    Bounded,
    Counterexample,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Bounded => "bounded",
            Status::Counterexample => "counterexample",
            Status::Error => "error",
        }
    }
}

/// One checked claim about a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub name: String,
    pub params: Vec<usize>,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

impl Verification {
    /// One `PASS`/`FAIL` line per claim.
    pub fn lines(&self) -> Vec<String> {
        self.claims
            .iter()
            .map(|c| format!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.claim))
            .collect()
    }
}

fn elementary3(sizes: &[usize]) -> u128 {
    let mut e = [1u128, 0, 0, 0];
    for &k in sizes {
        for j in (1..=3).rev() {
            e[j] += e[j - 1] * k as u128;
        }
    }
    e[3]
}

fn elementary2(sizes: &[usize]) -> u128 {
    let total: u128 = sizes.iter().map(|&k| k as u128).sum();
    let sq: u128 = sizes.iter().map(|&k| (k * k) as u128).sum();
    (total * total - sq) / 2
}

fn balanced(n: usize, l: usize) -> Vec<usize> {
    (0..l).map(|i| n / l + usize::from(i < n % l)).collect()
}

/// Builds a construction and checks its advertised properties with the
/// detectors and the closed-form edge counts.
pub fn verify_construction(name: &str, params: &[usize]) -> Result<Verification> {
    let built = build(name, params)?;
    let mut claims = Vec::new();
    let mut claim = |text: String, pass: bool| claims.push(Claim { claim: text, pass });
    let p = params;
    match (&built, name) {
        (Built::Triples(h), "h3") => {
            let (n, s) = (p[0], p[1]);
            claim("F5-free".into(), is_f5_free(h));
            let nu = matching_number(h).size();
            if n >= 3 * s {
                claim(format!("matching number = {s} (got {nu})"), nu == s);
            } else {
                claim(format!("matching number <= {s} (got {nu})"), nu <= s);
            }
            let want = formulas::h3_count(n as u64, s as u64);
            claim(format!("{want} edges (got {})", h.len()), h.len() as u128 == want);
        }
        (Built::Triples(h), "star") => {
            let n = p[0];
            claim("F5-free".into(), is_f5_free(h));
            let nu = matching_number(h).size();
            claim(format!("matching number = 1 (got {nu})"), nu == 1);
            let want = formulas::binomial(n as u64 - 1, 2);
            claim(format!("{want} edges (got {})", h.len()), h.len() as u128 == want);
        }
        (Built::Triples(h), "turan3" | "multipartite3") => {
            let sizes = if name == "turan3" { balanced(p[0], p[1]) } else { p.to_vec() };
            let want = elementary3(&sizes);
            claim(format!("{want} edges (got {})", h.len()), h.len() as u128 == want);
            if sizes.len() == 3 {
                claim("F5-free".into(), is_f5_free(h));
            }
        }
        (Built::Graph(g), "turan" | "kbip" | "multipartite") => {
            let sizes = match name {
                "turan" => balanced(p[0], p[1]),
                "kbip" => balanced(p[0], 2),
                _ => p.to_vec(),
            };
            let want = elementary2(&sizes);
            claim(format!("{want} edges (got {})", g.edge_count()), g.edge_count() as u128 == want);
            let l = sizes.len();
            if l == 2 {
                claim("triangle-free".into(), is_triangle_free(g));
            } else {
                claim(format!("K{}-free", l + 1), !has_clique(g, l + 1));
            }
        }
        (Built::Graph(g), "af") => {
            let (n, l, s) = (p[0], p[1], p[2]);
            let want = formulas::g_count(n as u64, l as u64, s as u64);
            claim(format!("{want} edges (got {})", g.edge_count()), g.edge_count() as u128 == want);
            claim(format!("K{}-free", l + 1), !has_clique(g, l + 1));
            let nu = matching_number(g).size();
            claim(format!("matching number <= {s} (got {nu})"), nu <= s);
        }
        _ => unreachable!("build accepted `{name}`"),
    }
    let pass = claims.iter().all(|c| c.pass);
    Ok(Verification {
        name: name.to_string(),
        params: params.to_vec(),
        claims,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemReport {
    pub line: usize,
    pub kind: &'static str,
    pub item: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<BoundValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<u128>,
    pub status: Status,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ItemReport {
    fn new(item: &Item) -> Self {
        ItemReport {
            line: item.line,
            kind: item.spec.kind(),
            item: item.text.clone(),
            expected: None,
            computed: None,
            status: Status::Match,
            exhaustive: true,
            nodes: None,
            classes: None,
            witnesses: Vec::new(),
            counterexample: None,
            claims: Vec::new(),
            note: None,
        }
    }

    fn fail(mut self, status: Status, note: impl Into<String>) -> Self {
        self.status = status;
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub items: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub bounded: usize,
    pub counterexamples: usize,
    pub errors: usize,
}

/// The reproducible part of a campaign run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub campaign: String,
    pub items: Vec<ItemReport>,
    pub summary: Summary,
    pub exit_code: i32,
}

/// A report plus per-item wall times, kept apart so the report compares
/// byte for byte across runs.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignOutput {
    pub report: Report,
    pub timings_ms: Vec<u64>,
}

fn side(computed: u128, expected: u128) -> &'static str {
    if computed > expected {
        "computed exceeds expected: the bound fails here or the search is wrong"
    } else {
        "computed below expected: a search, construction or formula shortfall"
    }
}

fn twin_layers(built: &Built, p: usize) -> (usize, usize, Vec<Vec<u64>>) {
    match built {
        Built::Graph(g) => (g.n(), 2, vec![g.edge_masks(); p]),
        Built::Triples(h) => (h.n(), 3, vec![h.edge_masks(); p]),
    }
}

fn run_search(
    mut rep: ItemReport,
    c: &Campaign,
    problem: &SearchProblem,
    expect: &Option<Expect>,
    classes: Option<usize>,
    extremal: &Option<(String, Vec<usize>)>,
    budget: Option<u64>,
) -> Result<ItemReport> {
    let cfg = SearchConfig {
        max_nodes: budget.or(c.budget),
        memo_depth: c.memo_depth,
        ..SearchConfig::default()
    };
    let expected = expect.as_ref().map(Expect::evaluate).transpose()?;
    rep.expected = expected;
    let r = extremal_search(problem, &cfg)?;
    rep.computed = Some(r.optimum as u128);
    rep.exhaustive = r.exhaustive;
    rep.nodes = Some(r.stats.nodes);
    rep.witnesses = r.witnesses.clone();
    if let Some(e) = expected {
        let got = r.optimum as u128;
        if r.exhaustive && got != e.value {
            return Ok(rep.fail(Status::Mismatch, side(got, e.value)));
        }
        if !r.exhaustive {
            if got > e.value && !r.witnesses.is_empty() {
                return Ok(rep.fail(Status::Mismatch, side(got, e.value)));
            }
            return Ok(rep.fail(Status::Bounded, "node budget exhausted"));
        }
    } else if !r.exhaustive {
        return Ok(rep.fail(Status::Bounded, "node budget exhausted"));
    }
    if classes.is_none() && extremal.is_none() {
        return Ok(rep);
    }
    let u = uniqueness_check(&r, &cfg)?;
    rep.nodes = Some(r.stats.nodes + u.stats.nodes);
    if !u.exhaustive {
        rep.exhaustive = false;
        return Ok(rep.fail(Status::Bounded, "node budget exhausted during class enumeration"));
    }
    rep.classes = Some(u.classes.len());
    rep.witnesses = u.classes.clone();
    if let Some(k) = classes {
        if u.classes.len() != k {
            let note = format!("expected {k} extremal classes, found {}", u.classes.len());
            return Ok(rep.fail(Status::Mismatch, note));
        }
    }
    if let Some((name, params)) = extremal {
        let built = build(name, params)?;
        let (n, r_, layers) = twin_layers(&built, problem.layers);
        if n != problem.n || r_ != problem.uniformity {
            return Err(Error::InvalidRequest(format!("extremal {name} does not fit the problem")));
        }
        let want = canonize(n, r_, &layers)?.bytes;
        if !u.classes.iter().any(|w| w.canonical.as_deref() == Some(want.as_slice())) {
            return Ok(rep.fail(Status::Mismatch, format!("{name} is not among the extremal classes")));
        }
        if u.classes.len() != 1 {
            return Ok(rep.fail(Status::Mismatch, format!("{name} is extremal but not unique")));
        }
    }
    Ok(rep)
}

fn run_item(c: &Campaign, item: &Item) -> Result<ItemReport> {
    let mut rep = ItemReport::new(item);
    match &item.spec {
        ItemSpec::Search {
            problem,
            expect,
            classes,
            extremal,
            budget,
        } => run_search(rep, c, problem, expect, *classes, extremal, *budget),
        ItemSpec::ColoredF5 { n, p, budget } => {
            let cfg = SearchConfig {
                max_nodes: budget.or(c.budget),
                memo_depth: c.memo_depth,
                local_moves: budget.or(c.budget).unwrap_or(0),
                ..SearchConfig::default()
            };
            let r = colored_f5_search(*n, *p, &cfg)?;
            rep.expected = Some(r.cap);
            rep.computed = Some(r.result.optimum as u128);
            rep.exhaustive = r.result.exhaustive;
            rep.nodes = Some(r.result.stats.nodes);
            rep.witnesses = r.result.witnesses.clone();
            Ok(match r.verdict {
                CapVerdict::WithinCap => rep,
                CapVerdict::Undetermined => rep.fail(Status::Bounded, "node budget exhausted below the cap"),
                CapVerdict::ExceedsCap => {
                    rep.counterexample = r.counterexample;
                    rep.fail(Status::Counterexample, "optimum exceeds the conjectured cap")
                }
            })
        }
        ItemSpec::Probe { s, n, budget, seed } => {
            let r = conjecture_5_1_probe(*s, *n, budget.or(c.budget).unwrap_or(0), *seed)?;
            rep.expected = Some(r.conjectured);
            rep.computed = Some(r.best_found as u128);
            rep.exhaustive = r.exhaustive;
            rep.nodes = Some(r.nodes);
            Ok(match r.verdict {
                ProbeVerdict::Confirmed => rep,
                ProbeVerdict::NoImprovementFound => {
                    let note = format!(
                        "lower bound {} certified; no improvement found within budget ({} nodes, {} local moves)",
                        r.lower_bound, r.nodes, r.local_moves
                    );
                    rep.fail(Status::Bounded, note)
                }
                ProbeVerdict::Counterexample => {
                    rep.counterexample = r.counterexample;
                    rep.fail(Status::Counterexample, "found a system beating the conjectured value")
                }
            })
        }
        ItemSpec::Formula { name, params, expect } => {
            let v = formulas::evaluate(name, params)?;
            rep.expected = Some(BoundValue {
                value: *expect,
                valid: true,
                source: Source::Given,
            });
            rep.computed = Some(v.value);
            Ok(if v.value == *expect {
                rep
            } else {
                rep.fail(Status::Mismatch, side(v.value, *expect))
            })
        }
        ItemSpec::Verify { name, params } => {
            let v = verify_construction(name, params)?;
            rep.claims = v.claims;
            Ok(if v.pass {
                rep
            } else {
                rep.fail(Status::Mismatch, "a construction claim failed")
            })
        }
    }
}

fn summarize(items: &[ItemReport]) -> (Summary, i32) {
    let mut s = Summary {
        items: items.len(),
        ..Summary::default()
    };
    for i in items {
        match i.status {
            Status::Match => s.matched += 1,
            Status::Mismatch => s.mismatched += 1,
            Status::Bounded => s.bounded += 1,
            Status::Counterexample => s.counterexamples += 1,
            Status::Error => s.errors += 1,
        }
    }
    let code = if s.mismatched + s.counterexamples + s.errors > 0 {
        2
    } else if s.bounded > 0 {
        3
    } else {
        0
    };
    (s, code)
}

/// Runs every item (in parallel) and assembles the report in spec order.
/// Item failures are recorded and do not stop the campaign.
pub fn run_campaign(c: &Campaign) -> CampaignOutput {
    let results: Vec<(ItemReport, u64)> = c
        .items
        .par_iter()
        .map(|item| {
            let t = Instant::now();
            let rep = run_item(c, item).unwrap_or_else(|e| ItemReport::new(item).fail(Status::Error, e.to_string()));
            let rep = if rep.status == Status::Error {
                ItemReport { exhaustive: false, ..rep }
            } else {
                rep
            };
            (rep, t.elapsed().as_millis().min(u64::MAX as u128) as u64)
        })
        .collect();
    let (items, timings_ms): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let (summary, exit_code) = summarize(&items);
    CampaignOutput {
        report: Report {
            campaign: c.name.clone(),
            items,
            summary,
            exit_code,
        },
        timings_ms,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("line,kind,item,expected,source,computed,status,exhaustive,classes,note\n");
        for i in &self.items {
            let opt = |v: Option<String>| v.unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                i.line,
                i.kind,
                csv_field(&i.item),
                opt(i.expected.map(|e| e.value.to_string())),
                opt(i.expected.map(|e| e.source.id().to_string())),
                opt(i.computed.map(|v| v.to_string())),
                i.status.as_str(),
                i.exhaustive,
                opt(i.classes.map(|v| v.to_string())),
                csv_field(i.note.as_deref().unwrap_or("")),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one line per item.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "campaign {}", self.campaign);
        for i in &self.items {
            let exp = i.expected.map(|e| format!(" expected={} ({})", e.value, e.source.id()));
            let got = i.computed.map(|v| format!(" computed={v}"));
            let _ = writeln!(
                out,
                "{:<14} line {:>3}: {}{}{}{}{}",
                i.status.as_str().to_uppercase(),
                i.line,
                i.item,
                exp.unwrap_or_default(),
                got.unwrap_or_default(),
                i.classes.map(|k| format!(" classes={k}")).unwrap_or_default(),
                i.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default(),
            );
            if let Some(w) = &i.counterexample {
                let _ = writeln!(out, "    counterexample: {}", serde_json::to_string(w).expect("witness"));
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} items: {} match, {} mismatch, {} bounded, {} counterexample, {} error; exit {}",
            s.items, s.matched, s.mismatched, s.bounded, s.counterexamples, s.errors, self.exit_code
        );
        out
    }
}
