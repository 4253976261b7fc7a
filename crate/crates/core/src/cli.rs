//! Command-line front end. [`run`] takes the argument list and output
//! streams explicitly so commands can be driven in-process.
//!
//! Exit codes: 0 success, 1 explains mismatch, 2 input error, 3 hypercube cap
//! exceeded, 4 internal explains failure, 5 graph is not a median graph,
//! 6 axiom check and decomposition check disagree.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{explain_by_halfgrid, explain_by_hypercube, DEFAULT_HYPERCUBE_CAP};
use crate::error::Error;
use crate::graph::{MedianGraphVerdict, RootedLabeledGraph};
use crate::io::{
    coord_provenance, describe_label, graph_from_json, graph_to_dot, graph_to_graphml,
    graph_to_json, pair_names, parse_map, pvr_provenance, tree_to_dot, tree_to_json, Provenance,
};
use crate::mdt::compute_mdt;
use crate::oracle::{generate_instances, InstanceMode, InstanceSpec, DEFAULT_INSTANCE_BUDGET};
use crate::pvr::pvr_expand;
use crate::symmap::{SymMap, UltrametricVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_NOT_MEDIAN: i32 = 5;
pub const EXIT_DISAGREE: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "medexplain", version, about = "Modular decomposition and median graphs explaining symmetric maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
    Graphml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Pvr,
    Halfgrid,
    Hypercube,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the modular decomposition tree of a map.
    Mdt {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
    },
    /// Build a labeled median graph explaining a map.
    Explain {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "pvr")]
        construction: Construction,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long, default_value_t = DEFAULT_HYPERCUBE_CAP)]
        cap_hypercube: usize,
    },
    /// Check that a JSON graph explains a map.
    Verify { input: PathBuf, graph: PathBuf },
    /// Classify a map as symbolic ultrametric or not, two independent ways.
    Check {
        input: Option<PathBuf>,
        /// Random sweep instead of a file, e.g. `--sweep n=7 k=3 count=500`;
        /// without `count` all labelings are enumerated.
        #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
        sweep: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of generated instances.
        #[arg(long)]
        budget: Option<u128>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn input_error(e: Error) -> Failure {
    Failure::new(EXIT_INPUT, e.to_string())
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn load_map(path: &Path) -> std::result::Result<SymMap, Failure> {
    parse_map(&read(path)?).map_err(input_error)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Mdt { input, format } => cmd_mdt(&input, format, stdout),
        Command::Explain {
            input,
            construction,
            out,
            format,
            cap_hypercube,
        } => cmd_explain(&input, construction, out.as_deref(), format, cap_hypercube, stdout, stderr),
        Command::Verify { input, graph } => cmd_verify(&input, &graph, stdout),
        Command::Check {
            input,
            sweep,
            seed,
            budget,
        } => cmd_check(input.as_deref(), sweep.as_deref(), seed, budget, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(stdout: &mut dyn Write, text: &str) -> CmdResult {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}")))
}

fn cmd_mdt(input: &Path, format: TreeFormat, stdout: &mut dyn Write) -> CmdResult {
    let delta = load_map(input)?;
    if delta.is_empty() {
        return Err(Failure::new(EXIT_INPUT, "map has no points"));
    }
    let tree = compute_mdt(&delta);
    let mut text = match format {
        TreeFormat::Json => tree_to_json(&tree, &delta),
        TreeFormat::Dot => tree_to_dot(&tree, &delta),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(stdout, &text)
}

/// Builds the requested construction for `delta`.
pub fn build_explanation(
    delta: &SymMap,
    construction: Construction,
    cap: usize,
) -> crate::error::Result<(RootedLabeledGraph, Provenance)> {
    match construction {
        Construction::Pvr => {
            if delta.is_empty() {
                return Err(Error::TooFewPoints(1));
            }
            let result = pvr_expand(delta);
            let prov = pvr_provenance(&result, delta);
            Ok((result.graph, prov))
        }
        Construction::Halfgrid => {
            let g = explain_by_halfgrid(delta)?;
            let prov = coord_provenance(&g, "halfgrid");
            Ok((g, prov))
        }
        Construction::Hypercube => {
            let g = explain_by_hypercube(delta, cap)?;
            let prov = coord_provenance(&g, "hypercube");
            Ok((g, prov))
        }
    }
}

fn cmd_explain(
    input: &Path,
    construction: Construction,
    out: Option<&Path>,
    format: GraphFormat,
    cap: usize,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let delta = load_map(input)?;
    let (graph, prov) = build_explanation(&delta, construction, cap).map_err(|e| match e {
        Error::DimensionCapExceeded(..) => Failure::new(EXIT_CAP, e.to_string()),
        other => input_error(other),
    })?;
    match graph.explains(&delta) {
        Ok(report) if report.explains() => {}
        Ok(report) => {
            return Err(Failure::new(
                EXIT_INTERNAL,
                format!("internal error: constructed graph mislabels {} pairs", report.mismatches.len()),
            ))
        }
        Err(e) => return Err(Failure::new(EXIT_INTERNAL, format!("internal error: {e}"))),
    }
    let mut text = match format {
        GraphFormat::Json => graph_to_json(&graph, &delta, &prov),
        GraphFormat::Dot => graph_to_dot(&graph, &delta, &prov),
        GraphFormat::Graphml => graph_to_graphml(&graph, &delta, &prov),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(
                stderr,
                "wrote {} vertices, {} edges to {}",
                graph.vertex_count(),
                graph.edge_count(),
                path.display()
            );
            Ok(())
        }
        None => emit(stdout, &text),
    }
}

fn cmd_verify(input: &Path, graph_path: &Path, stdout: &mut dyn Write) -> CmdResult {
    let delta = load_map(input)?;
    let imported = graph_from_json(&read(graph_path)?, &delta).map_err(input_error)?;
    let g = &imported.graph;
    let id = |v: usize| imported.ids[v];

    let verdict = match g.validate() {
        Err(Error::Disconnected) => {
            let report = json!({"median_graph": false, "explains": false, "reason": "disconnected"});
            emit(stdout, &format!("{report:#}\n"))?;
            return Err(Failure::new(EXIT_NOT_MEDIAN, "graph is disconnected"));
        }
        Err(e) => return Err(input_error(e)),
        Ok(()) => g.is_median_graph().map_err(input_error)?,
    };
    if let MedianGraphVerdict::NotMedian { triple, common } = verdict {
        let triple: Vec<usize> = triple.iter().map(|&v| id(v)).collect();
        let common: Vec<usize> = common.iter().map(|&v| id(v)).collect();
        let report = json!({
            "median_graph": false,
            "explains": false,
            "witness": {"triple": triple, "common": common},
        });
        emit(stdout, &format!("{report:#}\n"))?;
        return Err(Failure::new(
            EXIT_NOT_MEDIAN,
            format!("not a median graph: triple {triple:?} has {} common interval vertices", common.len()),
        ));
    }

    let report = match g.explains(&delta) {
        Ok(r) => r,
        Err(Error::UnlabeledMedian(x, y)) => {
            let report = json!({
                "median_graph": true,
                "explains": false,
                "unlabeled": [[x, y]],
            });
            emit(stdout, &format!("{report:#}\n"))?;
            return Err(Failure::new(EXIT_MISMATCH, format!("median of ({x}, {y}) is unlabeled")));
        }
        Err(e) => return Err(input_error(e)),
    };
    let mismatches: Vec<serde_json::Value> = report
        .mismatches
        .iter()
        .map(|m| {
            let (x, y) = pair_names(&delta, m.x, m.y);
            json!({
                "x": x,
                "y": y,
                "median": id(m.median),
                "found": describe_label(&delta, &imported.extra_labels, m.found),
                "expected": describe_label(&delta, &imported.extra_labels, m.expected),
            })
        })
        .collect();
    let out = json!({
        "median_graph": true,
        "explains": report.explains(),
        "pairs_checked": report.pairs_checked,
        "mismatches": mismatches,
    });
    emit(stdout, &format!("{out:#}\n"))?;
    if report.explains() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_MISMATCH,
            format!("{} pairs are not explained", report.mismatches.len()),
        ))
    }
}

fn describe_verdict(delta: &SymMap, verdict: &UltrametricVerdict) -> String {
    let names = |ps: &[crate::symmap::PointId]| {
        ps.iter().map(|p| delta.name(p.0)).collect::<Vec<_>>().join(",")
    };
    match verdict {
        UltrametricVerdict::Ultrametric => "symbolic ultrametric".to_string(),
        UltrametricVerdict::ViolatesU1(w) => format!("not symbolic ultrametric; U1 witness ({})", names(w)),
        UltrametricVerdict::ViolatesU2(w) => format!("not symbolic ultrametric; U2 witness ({})", names(w)),
    }
}

/// Axiom verdict and number of prime tree vertices; they agree when the map
/// is ultrametric exactly when there are no prime vertices.
pub fn classify(delta: &SymMap) -> (UltrametricVerdict, usize) {
    let verdict = delta.ultrametric_check();
    let primes = if delta.is_empty() {
        0
    } else {
        compute_mdt(delta).prime_nodes().len()
    };
    (verdict, primes)
}

fn parse_sweep(items: &[String], seed: u64) -> std::result::Result<InstanceSpec, Failure> {
    let mut n = None;
    let mut k = None;
    let mut count = None;
    for item in items.iter().flat_map(|s| s.split(',')) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::new(EXIT_INPUT, format!("sweep item {item:?} is not KEY=VALUE")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Failure::new(EXIT_INPUT, format!("sweep value {value:?} is not a number")))?;
        match key {
            "n" => n = Some(value),
            "k" => k = Some(value),
            "count" => count = Some(value),
            other => return Err(Failure::new(EXIT_INPUT, format!("unknown sweep key {other:?}"))),
        }
    }
    let (Some(n), Some(k)) = (n, k) else {
        return Err(Failure::new(EXIT_INPUT, "sweep needs n=.. and k=.."));
    };
    Ok(InstanceSpec {
        n,
        k,
        seed,
        mode: count.map_or(InstanceMode::Exhaustive, InstanceMode::Random),
    })
}

fn cmd_check(
    input: Option<&Path>,
    sweep: Option<&[String]>,
    seed: u64,
    budget: Option<u128>,
    stdout: &mut dyn Write,
) -> CmdResult {
    let mut disagreements = 0usize;
    if let Some(path) = input {
        let delta = load_map(path)?;
        let (verdict, primes) = classify(&delta);
        let plural = if primes == 1 { "vertex" } else { "vertices" };
        let line = format!("{}; MDT has {primes} prime {plural}\n", describe_verdict(&delta, &verdict));
        emit(stdout, &line)?;
        if verdict.is_ultrametric() != (primes == 0) {
            disagreements += 1;
        }
    }
    if let Some(items) = sweep {
        let spec = parse_sweep(items, seed)?;
        let budget = budget.unwrap_or(DEFAULT_INSTANCE_BUDGET);
        let stream = generate_instances(spec, budget).map_err(input_error)?;
        let mut total = 0usize;
        let mut bad = 0usize;
        for delta in stream {
            total += 1;
            let (verdict, primes) = classify(&delta);
            if verdict.is_ultrametric() != (primes == 0) {
                bad += 1;
            }
        }
        let mode = match spec.mode {
            InstanceMode::Exhaustive => "exhaustive".to_string(),
            InstanceMode::Random(c) => format!("count={c}"),
        };
        emit(
            stdout,
            &format!(
                "sweep n={} k={} {mode} seed={seed}: {total} instances, {bad} disagreements\n",
                spec.n, spec.k
            ),
        )?;
        disagreements += bad;
    }
    if input.is_none() && sweep.is_none() {
        return Err(Failure::new(EXIT_INPUT, "check needs an input file or --sweep"));
    }
    if disagreements > 0 {
        return Err(Failure::new(
            EXIT_DISAGREE,
            format!("internal error: {disagreements} axiom/decomposition disagreements"),
        ));
    }
    Ok(())
}
