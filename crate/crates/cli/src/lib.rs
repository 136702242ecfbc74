//! Command-line front end. [`run`] does all the work and returns the exit
//! code with both output streams, so it can be tested without a process.
//!
//! Exit codes: 0 basic or success, 3 non-basic / no decomposition /
//! conjecture finding, 2 malformed input or violated precondition,
//! 4 refused as infeasible, 1 a certificate failed its own re-check.

mod text;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridbasis::basis::{annihilation_basis, incidence_rank, is_minimal_by_kernel, Decomposition};
use gridbasis::constructions::{cross_plus_point, cross_set, staircase_set, unbounded_family, NamedFamily};
use gridbasis::graphs::{
    graph_from_set, graph_is_basic, hypergraph_from_set, hypergraph_is_basic, solve_edge_weights, vertex_sums,
    Hypergraph, MultiGraph,
};
use gridbasis::json;
use gridbasis::rectangles::{decompose_into_rectangles, verify_decomposition};
use gridbasis::search::{
    check_conjecture, enumerate_minimal_nonbasic, random_search_range, reachability_report, size_window,
    ReachabilityReport, SearchReport, Witness, EXHAUSTIVE_POINT_LIMIT,
};
use gridbasis::{is_basic, is_minimal_nonbasic, solve_additive_decomposition, Error, GridShape, Point, PointSet};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_REFUSED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gridbasis", version, about = "Decide whether finite subsets of integer grids are basic")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Re-parse the emitted certificate and check it against the input.
    #[arg(long, global = true)]
    pub verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Input: a file path, `-` for stdin, or inline JSON starting with `{`.
#[derive(Debug, Args)]
pub struct Input {
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic or not, with an independence or annihilation certificate.
    Check(Input),
    /// Primitive integer basis of all annihilation functions.
    Kernel(Input),
    /// Whether the set is minimal non-basic.
    Minimal(Input),
    /// Split a rational function into per-coordinate parts, or show why not.
    Decompose(Input),
    /// Write an annihilation function of the full grid as rectangle terms.
    Rectangles {
        #[command(flatten)]
        input: Input,
        /// Expand every term into unit simple functions.
        #[arg(long)]
        unit: bool,
    },
    /// Graph basicness; accepts a graph or a point set meeting layers in 0 or 2 points.
    Graph {
        #[command(flatten)]
        input: Input,
        /// Solve for edge weights realizing the vertex "weights" of the input.
        #[arg(long)]
        solve: bool,
    },
    /// Hypergraph basicness; accepts a hypergraph or a point set.
    Hypergraph(Input),
    /// Generate a named family.
    Construct {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        /// Extra point for cross-plus-point, comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<u32>>,
    },
    /// Enumerate or sample minimal non-basic sets.
    Search(SearchArgs),
    /// Check the sum-of-absolute-values conjecture on a set in [n]^3.
    Conjecture(Input),
    /// Which sizes between 2n and dn-(d-2) admit minimal non-basic covering sets.
    Reachability {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cross,
    Staircase,
    Unbounded,
    CrossPlusPoint,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random restarts per size.
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Run exhaustive enumeration beyond the default size limit.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    /// Single size; default is every size from 2n to dn-(d-2).
    #[arg(long, conflicts_with_all = ["min_size", "max_size"])]
    pub size: Option<usize>,
    #[arg(long)]
    pub min_size: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Also count sets that miss some layer.
    #[arg(long)]
    pub no_covering: bool,
    /// Seeded random search instead of exhaustive enumeration.
    #[arg(long)]
    pub random: bool,
    #[command(flatten)]
    pub run: RunArgs,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Result of one command before formatting.
struct Report {
    code: i32,
    json: Value,
    text: String,
    /// `Some(false)` when `--verify` was asked and the re-check failed.
    verified: Option<bool>,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => EXIT_REFUSED,
        _ => EXIT_MALFORMED,
    }
}

fn read_input(input: &str, stdin: &mut dyn Read) -> Result<String, String> {
    if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else if input.trim_start().starts_with('{') {
        Ok(input.to_string())
    } else {
        std::fs::read_to_string(PathBuf::from(input)).map_err(|e| format!("reading {input}: {e}"))
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(code, rendered)
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let jobs = match &cli.command {
        Command::Search(a) => a.run.jobs,
        Command::Reachability { run, .. } => run.jobs,
        _ => None,
    };
    let result = match jobs {
        Some(0) => return Outcome::fail(EXIT_MALFORMED, "--jobs must be at least 1"),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            // only search and reachability take --jobs, and neither reads stdin
            Ok(pool) => pool.install(|| dispatch(&cli, &mut std::io::empty())),
            Err(e) => return Outcome::fail(EXIT_MALFORMED, format!("cannot start {j} workers: {e}")),
        },
        None => dispatch(&cli, stdin),
    };
    match result {
        Err(Failure::Input(msg)) => Outcome::fail(EXIT_MALFORMED, msg),
        Err(Failure::Lib(e)) => Outcome::fail(error_code(&e), format!("error: {e}")),
        Ok(mut r) => {
            let mut stderr = String::new();
            if let Some(ok) = r.verified {
                if cli.format == Format::Json {
                    r.json["verified"] = json!(ok);
                } else {
                    r.text.push_str(if ok { "verified: yes\n" } else { "verified: NO\n" });
                }
                if !ok {
                    r.code = EXIT_CERTIFICATE;
                    stderr.push_str("certificate failed verification\n");
                }
            }
            let stdout = match cli.format {
                Format::Json => render_json(&r.json),
                Format::Text => r.text,
            };
            Outcome { code: r.code, stdout, stderr }
        }
    }
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

fn load(input: &Input, stdin: &mut dyn Read) -> Res<Value> {
    let text = read_input(&input.input, stdin).map_err(Failure::Input)?;
    Ok(json::parse_value(&text)?)
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Res<Report> {
    let verify = cli.verify;
    match &cli.command {
        Command::Check(i) => check(&load(i, stdin)?, verify),
        Command::Kernel(i) => kernel(&load(i, stdin)?, verify),
        Command::Minimal(i) => minimal(&load(i, stdin)?, verify),
        Command::Decompose(i) => decompose(&load(i, stdin)?, verify),
        Command::Rectangles { input, unit } => rectangles(&load(input, stdin)?, *unit, verify),
        Command::Graph { input, solve } => graph(&load(input, stdin)?, *solve, verify),
        Command::Hypergraph(i) => hypergraph(&load(i, stdin)?, verify),
        Command::Construct { family, n, d, m, x } => construct(*family, *n, *d, *m, x.as_deref(), verify),
        Command::Search(a) => search(a, verify),
        Command::Conjecture(i) => conjecture(&load(i, stdin)?, verify),
        Command::Reachability { n, d, run } => reachability(*n, *d, run, verify),
    }
}

fn set_input(v: &Value) -> Res<PointSet> {
    Ok(json::point_set_from_value(&json::set_fields_only(v)?)?)
}

fn check(v: &Value, verify: bool) -> Res<Report> {
    let m = set_input(v)?;
    let verdict = is_basic(&m);
    let out = json::verdict_json(&verdict, &m);
    let verified = verify.then(|| json::verdict_from_value(&out).is_ok_and(|back| back.verify(&m)));
    Ok(Report {
        code: if verdict.basic { EXIT_OK } else { EXIT_NEGATIVE },
        text: text::verdict(&verdict, &m),
        json: out,
        verified,
    })
}

fn kernel(v: &Value, verify: bool) -> Res<Report> {
    let m = set_input(v)?;
    let basis = annihilation_basis(&m);
    let out = json!({
        "set": json::point_set_json(&m),
        "dimension": basis.len(),
        "basis": basis.iter().map(json::int_weights_json).collect::<Vec<_>>(),
    });
    let verified = verify.then(|| {
        let back: Result<Vec<_>, _> = out["basis"].as_array().unwrap().iter().map(json::int_weights_from_value).collect();
        back.is_ok_and(|fs| {
            fs.len() + incidence_rank::<gridbasis::Int>(&m) == m.len()
                && fs.iter().all(|f| f.base() == &m && f.is_annihilation() && f.values().iter().any(|x| x != &0.into()))
        })
    });
    Ok(Report { code: EXIT_OK, text: text::kernel(&basis), json: out, verified })
}

fn minimal(v: &Value, verify: bool) -> Res<Report> {
    let m = set_input(v)?;
    let verdict = is_basic(&m);
    let minimal = is_minimal_nonbasic(&m);
    let basis = annihilation_basis(&m);
    let mut out = json!({
        "set": json::point_set_json(&m),
        "basic": verdict.basic,
        "minimal": minimal,
        "kernel_dimension": basis.len(),
    });
    let mut lines = vec![format!("{}", if minimal { "minimal non-basic" } else if verdict.basic { "basic" } else { "non-basic, not minimal" })];
    lines.push(format!("kernel dimension: {}", basis.len()));
    if basis.len() == 1 {
        let f = &basis[0];
        let zeros: Vec<Value> = f.iter().filter(|(_, x)| **x == 0.into()).map(|(p, _)| json!(p.0)).collect();
        out["annihilation"] = json::int_weights_json(f);
        out["zero_points"] = Value::Array(zeros);
        lines.push(format!("annihilation: {}", text::function(f)));
    }
    let verified = verify.then(|| minimal == is_minimal_by_kernel::<gridbasis::Int>(&m));
    Ok(Report { code: EXIT_OK, json: out, text: lines.join("\n") + "\n", verified })
}

fn decompose(v: &Value, verify: bool) -> Res<Report> {
    let f = json::rational_weights_from_value(v)?;
    let d = solve_additive_decomposition(f.base(), &f)?;
    let mut out = json::decomposition_json(&d);
    out["function"] = json::rational_weights_json(&f);
    let verified = verify.then(|| json::decomposition_from_value(&out, f.base().shape()).is_ok_and(|back| back.verify(&f)));
    let code = match d {
        Decomposition::Solved(_) => EXIT_OK,
        Decomposition::Infeasible { .. } => EXIT_NEGATIVE,
    };
    Ok(Report { code, text: text::decomposition(&d), json: out, verified })
}

fn rectangles(v: &Value, unit: bool, verify: bool) -> Res<Report> {
    let g = json::int_weights_from_value(v)?.extend_to_grid();
    let terms = decompose_into_rectangles(&g)?;
    let shape = g.base().shape().clone();
    let mut out = json::rectangles_json(&shape, &terms);
    let mut txt = text::rectangles(&terms, shape.d());
    if unit {
        let simple: Vec<_> = terms.iter().flat_map(|t| t.expand(shape.d())).collect();
        out["simple"] = Value::Array(simple.iter().map(json::simple_json).collect());
        txt.push_str(&format!("{} unit simple functions\n", simple.len()));
    }
    let verified = verify.then(|| json::rectangles_from_value(&strip(&out, &["simple"])).is_ok_and(|(_, back)| verify_decomposition(&g, &back)));
    Ok(Report { code: EXIT_OK, json: out, text: txt, verified })
}

fn strip(v: &Value, keys: &[&str]) -> Value {
    let mut v = v.clone();
    if let Some(o) = v.as_object_mut() {
        for k in keys {
            o.remove(*k);
        }
    }
    v
}

fn graph(v: &Value, solve: bool, verify: bool) -> Res<Report> {
    let (g, weights) = if v.get("points").is_some() {
        (graph_from_set(&set_input(v)?)?, None)
    } else {
        json::graph_from_value(v)?
    };
    if solve {
        let Some(w) = weights else {
            return Err(Failure::Input("--solve needs vertex \"weights\" in the graph input".into()));
        };
        return solve_graph(&g, &w, verify);
    }
    let verdict = graph_is_basic(&g);
    let out = json::graph_verdict_json(&g, &verdict);
    let verified = verify.then(|| match out.get("dependence") {
        Some(dep) => json::int_vector_from_value(dep, "dependence").is_ok_and(|l| dependence_holds(&g.as_hypergraph(), &l)),
        None => verdict.verify(&g),
    });
    Ok(Report {
        code: if verdict.basic { EXIT_OK } else { EXIT_NEGATIVE },
        text: text::graph_verdict(&g, &verdict),
        json: out,
        verified,
    })
}

fn dependence_holds(h: &Hypergraph, lambda: &[gridbasis::Int]) -> bool {
    lambda.len() == h.vertex_count()
        && lambda.iter().any(|x| x != &0.into())
        && h.incidence::<gridbasis::Int>().left_mul(lambda).is_ok_and(|s| s.iter().all(|x| x == &0.into()))
}

fn solve_graph(g: &MultiGraph, w: &[gridbasis::Rational], verify: bool) -> Res<Report> {
    match solve_edge_weights(g, w) {
        Ok(e) => {
            let out = json!({
                "graph": json::graph_json(g),
                "weights": w.iter().map(json::rational_value).collect::<Vec<_>>(),
                "edge_weights": e.iter().map(json::rational_value).collect::<Vec<_>>(),
            });
            let verified = verify.then(|| {
                json::rational_vector_from_value(&out["edge_weights"], "edge_weights").is_ok_and(|back| vertex_sums(g, &back) == w)
            });
            let txt = g
                .edges()
                .iter()
                .zip(&e)
                .map(|(&(a, b), x)| format!("edge {}-{}: {x}\n", a + 1, b + 1))
                .collect();
            Ok(Report { code: EXIT_OK, json: out, text: txt, verified })
        }
        Err(Error::BipartiteComponent(_)) => {
            let verdict = graph_is_basic(g);
            let mut out = json::graph_verdict_json(g, &verdict);
            out["solvable_for_all_weights"] = json!(false);
            let verified = verify.then(|| verdict.verify(g));
            Ok(Report { code: EXIT_NEGATIVE, text: text::graph_verdict(g, &verdict), json: out, verified })
        }
        Err(e) => Err(e.into()),
    }
}

fn hypergraph(v: &Value, verify: bool) -> Res<Report> {
    let h = if v.get("points").is_some() { hypergraph_from_set(&set_input(v)?) } else { json::hypergraph_from_value(v)? };
    let verdict = hypergraph_is_basic(&h);
    let out = json::hypergraph_verdict_json(&h, &verdict);
    let verified = verify.then(|| match out.get("dependence") {
        Some(dep) => json::int_vector_from_value(dep, "dependence").is_ok_and(|l| dependence_holds(&h, &l)),
        None => verdict.verify(&h),
    });
    let mut txt = format!("{} (rank {} of {} vertices)\n", if verdict.basic { "basic" } else { "non-basic" }, verdict.rank, h.vertex_count());
    if let Some(l) = &verdict.dependence {
        txt.push_str(&format!("dependence: {}\n", text::vector(l)));
    }
    Ok(Report { code: if verdict.basic { EXIT_OK } else { EXIT_NEGATIVE }, json: out, text: txt, verified })
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Res<T> {
    v.ok_or_else(|| Failure::Input(format!("construct {family} needs --{flag}")))
}

fn construct(family: FamilyArg, n: Option<u32>, d: Option<usize>, m: Option<u32>, x: Option<&[u32]>, verify: bool) -> Res<Report> {
    let fam: NamedFamily = match family {
        FamilyArg::Cross => cross_set(need(n, "n", "cross")?, need(d, "d", "cross")?)?,
        FamilyArg::Staircase => staircase_set(need(n, "n", "staircase")?, need(d, "d", "staircase")?)?,
        FamilyArg::Unbounded => unbounded_family(need(m, "m", "unbounded")?)?,
        FamilyArg::CrossPlusPoint => {
            let x = need(x, "x", "cross-plus-point")?;
            let n = need(n, "n", "cross-plus-point")?;
            let d = d.unwrap_or(x.len());
            if x.len() != d {
                return Err(Failure::Input(format!("--x has {} coordinates but --d is {d}", x.len())));
            }
            cross_plus_point(n, d, &Point::new(x.to_vec()))?
        }
    };
    let out = json::family_json(&fam);
    let verified = verify.then(|| match &out["claimed_annihilation"] {
        Value::Null => is_basic(&fam.set).basic,
        c => json::int_weights_from_value(c).is_ok_and(|f| f.base() == &fam.set && f.is_annihilation()),
    });
    Ok(Report { code: EXIT_OK, text: text::family(&fam), json: out, verified })
}

fn witnesses_verify(ws: &[Value], covering: bool) -> bool {
    ws.iter().all(|w| {
        let set = json::point_set_from_value(&w["set"]);
        let f = json::int_weights_from_value(&w["annihilation"]);
        match (set, f) {
            (Ok(set), Ok(annihilation)) => Witness { set, annihilation }.verify(covering),
            _ => false,
        }
    })
}

fn search(a: &SearchArgs, verify: bool) -> Res<Report> {
    let window = size_window(a.n, a.d);
    let sizes = match a.size {
        Some(k) => k..=k,
        None => a.min_size.unwrap_or(*window.start())..=a.max_size.unwrap_or(*window.end()),
    };
    let covering = !a.no_covering;
    let report: SearchReport = if a.random {
        random_search_range(a.n, a.d, sizes, covering, a.run.seed, a.run.budget)?
    } else {
        let shape = GridShape::uniform(a.n, a.d)?;
        if shape.point_count() > EXHAUSTIVE_POINT_LIMIT && !a.run.force {
            let e = enumerate_minimal_nonbasic(a.n, a.d, sizes, covering, false).unwrap_err();
            return Err(Failure::Lib(match e {
                Error::Infeasible { estimate } => Error::Infeasible { estimate: format!("{estimate}; use --random, or --force to run anyway") },
                other => other,
            }));
        }
        enumerate_minimal_nonbasic(a.n, a.d, sizes, covering, a.run.force)?
    };
    let out = json::search_report_json(&report);
    let verified = verify.then(|| {
        let ws: Vec<Value> = out["per_size"].as_array().unwrap().iter().map(|s| s["witness"].clone()).filter(|w| !w.is_null()).collect();
        witnesses_verify(&ws, covering)
    });
    let code = if report.counterexamples.is_empty() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Report { code, text: text::search(&report), json: out, verified })
}

fn conjecture(v: &Value, verify: bool) -> Res<Report> {
    let m = set_input(v)?;
    let c = check_conjecture(&m)?;
    let mut out = json::conjecture_json(&c);
    out["set"] = json::point_set_json(&m);
    let verified = verify.then(|| {
        let f = gridbasis::irreducible_annihilation(&m).expect("checked above");
        gridbasis::basis::l1_norm(&f) == c.sum_abs && is_minimal_nonbasic(&m) && m.covers_all_layers()
    });
    let txt = format!(
        "sum |f| = {}, 2(|M| - n) = {}: {}\n",
        c.sum_abs,
        c.rhs,
        if c.holds { "holds" } else { "FAILS (counterexample)" }
    );
    Ok(Report { code: if c.holds { EXIT_OK } else { EXIT_NEGATIVE }, json: out, text: txt, verified })
}

fn reachability(n: u32, d: usize, run: &RunArgs, verify: bool) -> Res<Report> {
    let r: ReachabilityReport = reachability_report(n, d, run.seed, run.budget, run.force)?;
    let out = json::reachability_json(&r);
    let verified = verify.then(|| {
        let ws: Vec<Value> = out["rows"].as_array().unwrap().iter().map(|s| s["witness"].clone()).filter(|w| !w.is_null()).collect();
        witnesses_verify(&ws, true)
    });
    Ok(Report { code: EXIT_OK, text: text::reachability(&r), json: out, verified })
}

/// Pretty JSON with arrays of scalars kept on one line, so point lists stay
/// readable. Keys are already sorted by `serde_json`.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    let flat = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| flat(x) || x.as_array().is_some_and(|a| a.iter().all(flat))) => {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("serializable")),
    }
}
