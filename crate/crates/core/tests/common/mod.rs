#![allow(dead_code)]

use std::path::PathBuf;

use medexplain::{RootedLabeledGraph, SymMap};
use rand::Rng;

pub fn delta4() -> SymMap {
    SymMap::build(
        &["a", "b", "c", "d"],
        &[
            ("a", "b", "blue"),
            ("a", "c", "blue"),
            ("b", "d", "blue"),
            ("b", "c", "red"),
            ("c", "d", "purple"),
            ("a", "d", "green"),
        ],
    )
    .unwrap()
}

pub fn delta5() -> SymMap {
    SymMap::build(
        &["a", "b", "c", "d", "e"],
        &[
            ("a", "b", "blue"),
            ("b", "c", "red"),
            ("b", "d", "red"),
            ("b", "e", "red"),
            ("a", "c", "purple"),
            ("a", "d", "purple"),
            ("a", "e", "purple"),
            ("c", "e", "purple"),
            ("c", "d", "green"),
            ("d", "e", "green"),
        ],
    )
    .unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> RootedLabeledGraph {
    let mut g = RootedLabeledGraph::with_vertices(n);
    for &(u, v) in edges {
        g.add_edge(u, v).unwrap();
    }
    g
}

pub fn cycle(n: usize) -> RootedLabeledGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph_from_edges(n, &edges)
}

/// Random tree on `n` vertices: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> RootedLabeledGraph {
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    graph_from_edges(n, &edges)
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["medexplain"];
    argv.extend_from_slice(args);
    let code = medexplain::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
