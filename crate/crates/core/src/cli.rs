//! The `leavitt-rank` command-line surface.
//!
//! Every command reads one graph document (from a file or standard input)
//! and prints a JSON or plain-text result. Exit codes: 0 success, 1 input
//! error, 2 size-guard refusal, 3 oracle disagreement.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::classify::{
    classification_report, compare_modes, evaluate_quotients, graph_trace, isolated_cycle_decomposition,
    purely_infinite_simple, trace_values, CertificateReport, ClassificationReport, PisReport, RankMode,
};
use crate::constructions::{
    approx_graph, approx_tower, compute_h0, desingularize, ideal_graph, quotient, restrict, ApproxGraph,
    ApproxVertex, IdealGraph, Selection,
};
use crate::cycles::{condition_k, condition_l, has_isolated_cycles, return_path_class, ReturnPathClass};
use crate::document::{DocumentError, GraphDocument};
use crate::error::GraphError;
use crate::graph::{classify_vertices, Graph, VertexSet};
use crate::lattice::{
    admissible_pairs, breaking_vertices, closure, enumerate_hs_sets, AdmissiblePair, HsSet, DEFAULT_LATTICE_LIMIT,
};
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SIZE_GUARD: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Vertices,
    Closure,
    Lattice,
    Bh,
    Pairs,
    Restrict,
    Quotient,
    Approx,
    Tower,
    IdealGraph,
    H0,
    Desing,
    CondL,
    CondK,
    Isolated,
    Pis,
    PisQuotients,
    Trace,
    StableRank,
    Report,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Classify a graph document and build graph constructions.
#[derive(Debug, Parser)]
#[command(name = "leavitt-rank", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph document to read; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Comma-separated vertex names (closure, bh, restrict, quotient,
    /// ideal-graph, approx).
    #[arg(long)]
    pub set: Option<String>,
    /// Comma-separated breaking vertices kept in `B` (quotient).
    #[arg(long)]
    pub breaking: Option<String>,
    /// Comma-separated edges `id#index` forming `G¹` (approx).
    #[arg(long)]
    pub edges: Option<String>,
    /// Truncation depth (desing) or number of stages (tower).
    #[arg(long)]
    pub depth: Option<u64>,
    /// Require `E \ H` to have finitely many edges (stable-rank).
    #[arg(long)]
    pub strict_finite: bool,
    /// Cross-check against the brute-force oracles.
    #[arg(long)]
    pub oracle: bool,
    /// Refuse lattices with more members than this.
    #[arg(long, default_value_t = DEFAULT_LATTICE_LIMIT)]
    pub max_lattice: usize,
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Input(String),
    SizeGuard(String),
    Oracle(String),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Failure {
        match e {
            GraphError::LatticeTooLarge { .. } => Failure::SizeGuard(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// The report document written by `report`.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_sha256: String,
    pub name: String,
    pub report: ClassificationReport,
}

/// Runs one invocation. `args` includes the program name; `stdin` is read
/// only when no input path is given.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::fail(code, text)
            };
        }
    };

    let text = match read_input(&args, stdin) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };

    match execute(&args, &text) {
        Ok(value) => Outcome {
            code: EXIT_OK,
            stdout: render(&value, args.format),
            stderr: String::new(),
        },
        Err(Failure::Input(m)) => Outcome::fail(EXIT_INPUT, format!("error: {m}")),
        Err(Failure::SizeGuard(m)) => Outcome::fail(EXIT_SIZE_GUARD, format!("refused: {m}")),
        Err(Failure::Oracle(m)) => Outcome::fail(EXIT_ORACLE, format!("oracle mismatch: {m}")),
    }
}

fn read_input(args: &Args, stdin: &mut dyn Read) -> Result<String, String> {
    match &args.input {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("error: cannot read {}: {e}", path.display()))
        }
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| format!("error: cannot read standard input: {e}"))?;
            Ok(text)
        }
    }
}

fn parse_list(flag: &str, raw: &str) -> Result<Vec<String>, Failure> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|item| {
            let item = item.trim();
            if item.is_empty() {
                Err(Failure::Input(format!("malformed --{flag} \"{raw}\": empty entry")))
            } else {
                Ok(item.to_string())
            }
        })
        .collect()
}

fn vertex_list(graph: &Graph, flag: &str, raw: Option<&str>) -> Result<VertexSet, Failure> {
    let raw = raw.ok_or_else(|| Failure::Input(format!("this command needs --{flag}")))?;
    Ok(graph.vertex_set(parse_list(flag, raw)?)?)
}

fn hs_from_set(graph: &Graph, args: &Args) -> Result<HsSet, Failure> {
    let set = vertex_list(graph, "set", args.set.as_deref())?;
    Ok(HsSet::new(graph, set)?)
}

fn graph_json(graph: &Graph) -> Value {
    let doc = GraphDocument::from_graph("", graph);
    json!({ "vertices": doc.vertices, "edges": doc.edges })
}

fn approx_json(graph: &Graph, approx: &ApproxGraph) -> Value {
    let origin: BTreeMap<&str, String> = approx
        .origin
        .iter()
        .map(|(name, o)| {
            let described = match o {
                ApproxVertex::Edge(e) => format!("edge {}", graph.edge_label(*e)),
                ApproxVertex::Vertex(v) => format!("vertex {}", graph.name(*v)),
            };
            (name.as_str(), described)
        })
        .collect();
    json!({ "graph": graph_json(&approx.graph), "origin": origin })
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports always serialize")
}

fn run_oracles(graph: &Graph, limit: usize) -> Result<(), Failure> {
    let brute = oracle::brute_force_lattice(graph).ok_or_else(|| {
        Failure::SizeGuard(format!(
            "the oracles handle at most {} vertices",
            oracle::MAX_BRUTE_FORCE_VERTICES
        ))
    })?;
    let lattice: Vec<VertexSet> = enumerate_hs_sets(graph, limit)?.into_iter().map(HsSet::into_set).collect();
    if lattice != brute {
        return Err(Failure::Oracle(format!(
            "lattice has {} members, subset filtering finds {}",
            lattice.len(),
            brute.len()
        )));
    }
    for v in graph.vertices() {
        let fast = return_path_class(graph, v)?.class;
        let walked = oracle::bounded_walk_return_class(graph, v);
        if fast != walked {
            return Err(Failure::Oracle(format!(
                "return paths at {}: {fast:?} vs bounded walk {walked:?}",
                graph.name(v)
            )));
        }
    }
    let k = condition_k(graph).holds;
    if oracle::condition_k_by_quotients(graph) != Some(k) {
        return Err(Failure::Oracle("Condition (K) disagrees with the quotient criterion".into()));
    }
    if let Some(expected) = oracle::row_finite_stable_rank(graph) {
        let got = crate::classify::stable_rank(graph, RankMode::Unital, limit)?.value;
        if got != expected {
            return Err(Failure::Oracle(format!("stable rank {got} vs row-finite oracle {expected}")));
        }
    }
    Ok(())
}

fn execute(args: &Args, text: &str) -> Result<Value, Failure> {
    let doc = GraphDocument::parse(text)?;
    let graph = doc.to_graph()?;
    let limit = args.max_lattice;
    if args.oracle {
        run_oracles(&graph, limit)?;
    }

    let value = match args.command {
        Command::Validate => json!({
            "valid": true,
            "name": doc.name,
            "vertices": graph.vertex_count(),
            "bundles": graph.bundles().len(),
            "row_finite": graph.is_row_finite(),
        }),
        Command::Vertices => {
            let rows: Vec<Value> = classify_vertices(&graph)
                .into_iter()
                .enumerate()
                .map(|(v, c)| json!({ "name": graph.name(v), "kind": c.kind, "out_degree": c.out_degree }))
                .collect();
            json!({ "vertices": rows })
        }
        Command::Closure => {
            let seed = vertex_list(&graph, "set", args.set.as_deref())?;
            let c = closure(&graph, &seed);
            let stages: BTreeMap<&str, usize> = c.stages.iter().map(|(&v, &s)| (graph.name(v), s)).collect();
            json!({ "seed": seed.names(&graph), "closure": c.set.names(&graph), "stages": stages })
        }
        Command::Lattice => {
            let members = enumerate_hs_sets(&graph, limit)?;
            json!({
                "size": members.len(),
                "trivial": members.len() <= 2,
                "members": members.iter().map(|h| h.names(&graph)).collect::<Vec<_>>(),
            })
        }
        Command::Bh => {
            let h = hs_from_set(&graph, args)?;
            json!({ "h": h.names(&graph), "breaking": breaking_vertices(&graph, &h).names(&graph) })
        }
        Command::Pairs => {
            let pairs: Vec<Value> = admissible_pairs(&graph, limit)?
                .iter()
                .map(|p| json!({ "h": p.h.names(&graph), "b": p.b.names(&graph) }))
                .collect();
            json!({ "count": pairs.len(), "pairs": pairs })
        }
        Command::Restrict => {
            let h = hs_from_set(&graph, args)?;
            graph_json(&restrict(&graph, &h))
        }
        Command::Quotient => {
            let h = hs_from_set(&graph, args)?;
            let b = match args.breaking.as_deref() {
                Some(raw) => graph.vertex_set(parse_list("breaking", raw)?)?,
                None => VertexSet::new(),
            };
            let pair = AdmissiblePair::new(&graph, h, b)?;
            let q = quotient(&graph, &pair);
            json!({
                "h": pair.h.names(&graph),
                "b": pair.b.names(&graph),
                "graph": graph_json(&q.graph),
                "vertex_origin": q.vertex_origin,
                "bundle_origin": q.bundle_origin,
            })
        }
        Command::Approx => {
            let vertices = vertex_list(&graph, "set", Some(args.set.as_deref().unwrap_or("")))?;
            let edges = parse_list("edges", args.edges.as_deref().unwrap_or(""))?
                .iter()
                .map(|e| graph.parse_edge(e))
                .collect::<Result<_, _>>()?;
            let approx = approx_graph(&graph, &Selection { vertices, edges })?;
            approx_json(&graph, &approx)
        }
        Command::Tower => {
            let stages: Vec<Value> = approx_tower(&graph, args.depth.unwrap_or(3))?
                .iter()
                .map(|s| {
                    json!({
                        "stage": s.stage,
                        "selected_edges": s.selection.edges.len(),
                        "approximation": approx_json(&graph, &s.approx),
                    })
                })
                .collect();
            json!({ "stages": stages })
        }
        Command::IdealGraph => {
            let h = hs_from_set(&graph, args)?;
            match ideal_graph(&graph, &h)? {
                IdealGraph::Finite(data) => {
                    let paths: BTreeMap<&str, Vec<String>> = data
                        .path_vertices
                        .iter()
                        .map(|(name, p)| (name.as_str(), p.iter().map(|&e| graph.edge_label(e)).collect()))
                        .collect();
                    json!({ "finite": true, "graph": graph_json(&data.graph), "path_vertices": paths })
                }
                IdealGraph::Infinite(w) => json!({ "finite": false, "witness": w.describe(&graph) }),
            }
        }
        Command::H0 => {
            let d = compute_h0(&graph);
            json!({ "h0": d.h0.names(&graph), "h": d.h.names(&graph) })
        }
        Command::Desing => {
            let d = desingularize(&graph, args.depth.unwrap_or(2));
            json!({ "depth": d.depth, "graph": graph_json(&d.graph), "origin": d.origin })
        }
        Command::CondL => {
            let l = condition_l(&graph);
            json!({ "holds": l.holds, "witness": l.exitless_cycle.map(|c| c.label(&graph)) })
        }
        Command::CondK => {
            let k = condition_k(&graph);
            let mut classes = BTreeMap::new();
            for v in graph.vertices() {
                let class: ReturnPathClass = return_path_class(&graph, v)?.class;
                classes.insert(graph.name(v), class);
            }
            json!({
                "holds": k.holds,
                "witness": k.witness.map(|(v, c)| format!("{}: {}", graph.name(v), c.label(&graph))),
                "return_paths": classes,
            })
        }
        Command::Isolated => {
            let d = isolated_cycle_decomposition(&graph);
            json!({
                "isolated_cycles": has_isolated_cycles(&graph),
                "h0": d.h0.names(&graph),
                "h": d.h.names(&graph),
                "quotient_vertices": d.quotient.graph.names(),
                "quotient_has_isolated_cycles": d.check,
            })
        }
        Command::Pis => to_value(&PisReport::new(&purely_infinite_simple(&graph), &graph)),
        Command::PisQuotients => {
            let all = evaluate_quotients(&graph, limit)?;
            let rows: Vec<Value> = all
                .iter()
                .map(|q| {
                    let rest = restrict(&graph, &q.h);
                    json!({
                        "h": q.h.names(&graph),
                        "edge_finite": q.edge_finite,
                        "verdict": PisReport::new(&q.verdict, &rest),
                    })
                })
                .collect();
            let passing: Vec<Vec<String>> =
                all.iter().filter(|q| q.verdict.verdict).map(|q| q.h.names(&graph)).collect();
            json!({ "pis_quotients": passing, "candidates": rows })
        }
        Command::Trace => match graph_trace(&graph) {
            Some(t) => json!({ "exists": true, "norm": t.norm().to_string(), "values": trace_values(&t, &graph) }),
            None => json!({ "exists": false }),
        },
        Command::StableRank => {
            let both = compare_modes(&graph, limit)?;
            let mode = if args.strict_finite {
                RankMode::StrictFinite
            } else {
                RankMode::Unital
            };
            let chosen = both.get(mode);
            json!({
                "value": chosen.value,
                "mode": mode,
                "certificate": CertificateReport::new(chosen, &graph),
                "verified": chosen.verify(&graph, limit),
                "unital_value": both.unital.value,
                "strict_value": both.strict.value,
                "modes_diverge": both.diverges(),
            })
        }
        Command::Report => {
            let report = ReportDocument {
                tool: "leavitt-rank",
                version: env!("CARGO_PKG_VERSION"),
                input_sha256: hex::encode(Sha256::digest(text.as_bytes())),
                name: doc.name.clone(),
                report: classification_report(&graph, limit)?,
            };
            to_value(&report)
        }
    };
    Ok(value)
}

/// Renders a result. JSON output is pretty-printed; text output lists one
/// `key: value` per line, nesting by indentation.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        _ => None,
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
