use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use exturan_core::campaign::{self, parse_campaign, run_campaign, verify_construction, BUILTINS};
use exturan_core::constructions::{build, Built, CONSTRUCTIONS};
use exturan_core::detectors::{
    find_f5, find_rainbow_matching, find_rainbow_triangle, find_triangle, find_two_colored_f5,
    find_two_colored_triangle, matching_number, Matching, PatternWitness,
};
use exturan_core::formulas::{evaluate, FORMULAS};
use exturan_core::model::format::{self, EdgeList};
use exturan_core::search::{
    extremal_search, uniqueness_check, Pattern, SearchConfig, SearchProblem, SearchResult, UniquenessResult,
};
use exturan_core::{Error, Result};

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Exit code for input and usage errors.
const EXIT_ERROR: u8 = 4;

#[derive(Parser)]
#[command(name = "exturan", version)]
#[command(about = "Exact extremal numbers for generalized triangles and bounded matchings")]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and print it as an edge list
    Construct {
        /// One of: turan, turan3, h3, star, af, kbip, multipartite, multipartite3
        name: Option<String>,
        params: Vec<usize>,
        /// List constructions and their parameters
        #[arg(long)]
        list: bool,
    },
    /// Look for a pattern in an edge-list file; exits 0 if found, 1 if not
    Detect {
        kind: DetectKind,
        file: PathBuf,
        /// For colored input with `matching`: size of the rainbow matching
        #[arg(long)]
        rainbow: Option<usize>,
    },
    /// Evaluate a closed-form bound
    Formula {
        name: Option<String>,
        params: Vec<u64>,
        /// List formulas and their parameters
        #[arg(long)]
        list: bool,
    },
    /// Exact extremal search
    Search {
        #[arg(long)]
        n: usize,
        /// Uniformity, 2 or 3
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Comma-separated forbidden patterns: f5, triangle, k<q>, 2col-f5
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        #[arg(long)]
        nu_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        layers: usize,
        /// Colored triangle pattern: 2col or rainbow
        #[arg(long)]
        pattern: Option<String>,
        /// Node budget
        #[arg(long, env = "EXTURAN_BUDGET")]
        budget: Option<u64>,
        /// Isomorph rejection cutoff in edge decisions
        #[arg(long, default_value_t = exturan_core::search::DEFAULT_MEMO_DEPTH)]
        memo_depth: usize,
        /// Also enumerate every extremal isomorphism class
        #[arg(long)]
        unique: bool,
    },
    /// Check the advertised properties of a construction
    Verify { name: String, params: Vec<usize> },
    /// Run a built-in campaign or a campaign spec file
    Campaign {
        /// Built-in name or path to a spec file
        spec: Option<String>,
        /// List built-in campaigns
        #[arg(long)]
        list: bool,
        /// Default node budget for items without one
        #[arg(long, env = "EXTURAN_BUDGET")]
        budget: Option<u64>,
        /// Write the JSON report here
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Write the CSV report here
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DetectKind {
    F5,
    Triangle,
    #[value(name = "2col-triangle")]
    TwoColTriangle,
    RainbowTriangle,
    #[value(name = "2col-f5")]
    TwoColF5,
    Matching,
}

fn print_json<T: Serialize + ?Sized>(v: &T) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn construct(name: Option<String>, params: &[usize], list: bool, as_json: bool) -> Result<u8> {
    if list {
        for (n, p) in CONSTRUCTIONS {
            outln!("{n} {p}");
        }
        return Ok(0);
    }
    let name = name.ok_or_else(|| Error::InvalidRequest("construction name required".into()))?;
    let built = build(&name, params)?;
    let (n, r, edges, text) = match &built {
        Built::Graph(g) => (
            g.n(),
            2,
            g.edges().map(|(u, v)| vec![u, v]).collect::<Vec<_>>(),
            format::write_graph(g),
        ),
        Built::Triples(h) => (
            h.n(),
            3,
            h.edges().iter().map(|t| t.vertices().to_vec()).collect(),
            format::write_triples(h),
        ),
    };
    if as_json {
        print_json(&json!({ "name": name, "params": params, "n": n, "r": r, "edges": edges }));
    } else {
        out!("{text}");
    }
    Ok(0)
}

fn print_witness(w: Option<PatternWitness>, as_json: bool) -> u8 {
    if as_json {
        print_json(&json!({ "found": w.is_some(), "witness": w }));
    } else {
        match &w {
            Some(w) => {
                outln!("{:?} {:?}", w.kind, w.vertices);
                for e in &w.edges {
                    match e.layer {
                        Some(l) => outln!("  layer {l}: {:?}", e.vertices),
                        None => outln!("  {:?}", e.vertices),
                    }
                }
            }
            None => outln!("NONE"),
        }
    }
    u8::from(w.is_none())
}

fn print_matching(m: Option<Matching>, as_json: bool) -> u8 {
    if as_json {
        print_json(&json!({ "found": m.is_some(), "size": m.as_ref().map(Matching::size), "matching": m }));
    } else {
        match &m {
            Some(m) => {
                outln!("matching of size {}", m.size());
                for (i, e) in m.edges.iter().enumerate() {
                    match &m.layers {
                        Some(l) => outln!("  layer {}: {e:?}", l[i]),
                        None => outln!("  {e:?}"),
                    }
                }
            }
            None => outln!("NONE"),
        }
    }
    u8::from(m.is_none())
}

fn mismatch(kind: DetectKind, what: &str) -> Error {
    Error::InvalidRequest(format!("{kind:?} detection does not apply to {what} input"))
}

fn detect(kind: DetectKind, file: &PathBuf, rainbow: Option<usize>, as_json: bool) -> Result<u8> {
    let input = format::parse(&fs::read_to_string(file)?)?;
    use DetectKind as K;
    Ok(match (kind, &input) {
        (K::F5, EdgeList::Triples(h)) => print_witness(find_f5(h), as_json),
        (K::Triangle, EdgeList::Graph(g)) => print_witness(find_triangle(g), as_json),
        (K::TwoColTriangle, EdgeList::Colored(s)) => print_witness(find_two_colored_triangle(s)?, as_json),
        (K::RainbowTriangle, EdgeList::Colored(s)) => print_witness(find_rainbow_triangle(s)?, as_json),
        (K::TwoColF5, EdgeList::ColoredTriples(hs)) => print_witness(find_two_colored_f5(hs)?, as_json),
        (K::Matching, EdgeList::Graph(g)) => print_matching(Some(matching_number(g)).filter(|m| m.size() > 0), as_json),
        (K::Matching, EdgeList::Triples(h)) => print_matching(Some(matching_number(h)).filter(|m| m.size() > 0), as_json),
        (K::Matching, EdgeList::Colored(s)) => {
            let k = rainbow.ok_or_else(|| Error::InvalidRequest("colored input needs --rainbow <k>".into()))?;
            print_matching(find_rainbow_matching(s, k)?, as_json)
        }
        (k, EdgeList::Graph(_)) => return Err(mismatch(k, "graph")),
        (k, EdgeList::Triples(_)) => return Err(mismatch(k, "3-graph")),
        (k, EdgeList::Colored(_)) => return Err(mismatch(k, "colored graph")),
        (k, EdgeList::ColoredTriples(_)) => return Err(mismatch(k, "colored 3-graph")),
    })
}

fn formula(name: Option<String>, params: &[u64], list: bool, as_json: bool) -> Result<u8> {
    if list {
        for (n, p) in FORMULAS {
            outln!("{n} {p}");
        }
        return Ok(0);
    }
    let name = name.ok_or_else(|| Error::InvalidRequest("formula name required".into()))?;
    let v = evaluate(&name, params)?;
    if as_json {
        print_json(&json!({ "name": name, "params": params, "value": v.value.to_string(), "valid": v.valid, "source": v.source }));
    } else {
        outln!("{} (valid: {}, source: {})", v.value, v.valid, v.source.id());
    }
    Ok(0)
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    #[serde(flatten)]
    result: &'a SearchResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<&'a UniquenessResult>,
}

struct SearchArgs {
    n: usize,
    r: usize,
    forbid: Vec<String>,
    nu_max: Option<usize>,
    layers: usize,
    pattern: Option<String>,
    budget: Option<u64>,
    memo_depth: usize,
    unique: bool,
}

fn search(a: SearchArgs, as_json: bool) -> Result<u8> {
    let mut prob = SearchProblem::new(a.n, a.r).with_layers(a.layers);
    for f in a.forbid.iter().chain(a.pattern.iter()) {
        prob = prob.forbid(f.parse::<Pattern>()?);
    }
    if let Some(s) = a.nu_max {
        prob = prob.with_nu_max(s);
    }
    let cfg = SearchConfig {
        max_nodes: a.budget,
        memo_depth: a.memo_depth,
        ..SearchConfig::default()
    };
    let r = extremal_search(&prob, &cfg)?;
    let classes = if a.unique && r.exhaustive && !r.witnesses.is_empty() {
        Some(uniqueness_check(&r, &cfg)?)
    } else {
        None
    };
    if as_json {
        print_json(&SearchOutput {
            result: &r,
            classes: classes.as_ref(),
        });
    } else {
        outln!(
            "optimum {} ({}), {} nodes",
            r.optimum,
            if r.exhaustive { "exhaustive" } else { "budget exhausted" },
            r.stats.nodes
        );
        for w in &r.witnesses {
            outln!("witness {}", serde_json::to_string(w).expect("json"));
        }
        if let Some(u) = &classes {
            outln!("{} extremal class(es){}", u.classes.len(), if u.exhaustive { "" } else { " (incomplete)" });
            for w in &u.classes {
                outln!("class {}", serde_json::to_string(w).expect("json"));
            }
        }
    }
    Ok(if r.exhaustive { 0 } else { 3 })
}

fn verify(name: &str, params: &[usize], as_json: bool) -> Result<u8> {
    let v = verify_construction(name, params)?;
    if as_json {
        print_json(&v);
    } else {
        for l in v.lines() {
            outln!("{l}");
        }
    }
    Ok(if v.pass { 0 } else { 2 })
}

fn run_campaign_cmd(
    spec: Option<String>,
    list: bool,
    budget: Option<u64>,
    json_out: Option<PathBuf>,
    csv_out: Option<PathBuf>,
    as_json: bool,
) -> Result<u8> {
    if list {
        for (name, _) in BUILTINS {
            outln!("{name}");
        }
        return Ok(0);
    }
    let spec = spec.ok_or_else(|| Error::InvalidRequest("campaign name or spec file required".into()))?;
    let text = match campaign::builtin(&spec) {
        Some(t) => t.to_string(),
        None => fs::read_to_string(&spec)?,
    };
    let mut c = parse_campaign(&text)?;
    if c.budget.is_none() {
        c.budget = budget.filter(|&b| b > 0);
    }
    let out = run_campaign(&c);
    if let Some(p) = json_out {
        fs::write(p, serde_json::to_string_pretty(&out).expect("json"))?;
    }
    if let Some(p) = csv_out {
        fs::write(p, out.report.to_csv())?;
    }
    if as_json {
        print_json(&out);
    } else {
        out!("{}", out.report.to_text());
    }
    Ok(out.report.exit_code as u8)
}

fn run(cli: Cli) -> Result<u8> {
    let j = cli.json;
    match cli.command {
        Command::Construct { name, params, list } => construct(name, &params, list, j),
        Command::Detect { kind, file, rainbow } => detect(kind, &file, rainbow, j),
        Command::Formula { name, params, list } => formula(name, &params, list, j),
        Command::Search {
            n,
            r,
            forbid,
            nu_max,
            layers,
            pattern,
            budget,
            memo_depth,
            unique,
        } => search(
            SearchArgs {
                n,
                r,
                forbid,
                nu_max,
                layers,
                pattern,
                budget,
                memo_depth,
                unique,
            },
            j,
        ),
        Command::Verify { name, params } => verify(&name, &params, j),
        Command::Campaign {
            spec,
            list,
            budget,
            json_out,
            csv_out,
        } => run_campaign_cmd(spec, list, budget, json_out, csv_out, j),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
