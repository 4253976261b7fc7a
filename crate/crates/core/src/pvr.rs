//! Prime-vertex replacement: turns the decomposition tree into a rooted
//! labeled median graph that explains the map.
//!
//! Every prime node `v` with children `c_1 .. c_k` (ordered by smallest
//! point) loses its tree edges to the children. An extended half-grid on
//! `k` leaves, labeled by the quotient over the children, is glued in with
//! its root identified with `v` and its leaf `x_a` identified with `c_a`.

use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::{half_grid_size, labeled_half_grid, Coord};
use crate::error::Result;
use crate::graph::{MedianCertificate, RootedLabeledGraph};
use crate::mdt::{compute_mdt, MdTree, NodeLabel};
use crate::symmap::{PointId, SymMap};

/// Where a vertex of the expanded graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// The decomposition-tree node with the same index.
    Mdt(usize),
    /// An interior vertex of the graph glued in for a prime node.
    Replacement { prime: usize, coord: Option<Coord> },
}

/// The graph glued in for one prime node.
#[derive(Debug, Clone)]
pub struct Replacement {
    /// Prime node; also its vertex id in the expanded graph.
    pub prime: usize,
    /// Children in leaf order `x_1 .. x_k`.
    pub children: Vec<usize>,
    /// The replacement graph before gluing; its leaf `PointId(a)` stands
    /// for `children[a]`.
    pub local: RootedLabeledGraph,
    /// Local vertex id to expanded-graph vertex id.
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PvrResult {
    pub graph: RootedLabeledGraph,
    pub tree: MdTree,
    pub provenance: Vec<Origin>,
    pub replacements: Vec<Replacement>,
}

impl PvrResult {
    /// Vertices that carry a label by construction: inner tree nodes plus
    /// the root medians of every replacement graph.
    pub fn labeled_set(&self) -> Result<BTreeSet<usize>> {
        let mut w: BTreeSet<usize> = self.tree.inner_nodes().collect();
        for r in &self.replacements {
            for m in r.local.median_set()? {
                w.insert(r.vertex_map[m]);
            }
        }
        Ok(w)
    }
}

/// Builds the prime-vertex replacement graph of `delta`'s decomposition tree.
pub fn pvr_expand(delta: &SymMap) -> PvrResult {
    let tree = compute_mdt(delta);
    let mut graph = RootedLabeledGraph::with_vertices(tree.len());
    let mut provenance: Vec<Origin> = (0..tree.len()).map(Origin::Mdt).collect();

    for (i, node) in tree.nodes().iter().enumerate() {
        match node.label {
            None => {
                let p = node.set.first().expect("leaf node holds one point");
                graph.bind_leaf(i, PointId(p)).expect("points bind once");
            }
            Some(NodeLabel::Label(l)) => graph.set_label(i, Some(l)),
            Some(NodeLabel::Prime) => {}
        }
        if let Some(parent) = node.parent {
            if tree.node(parent).label != Some(NodeLabel::Prime) {
                graph.add_edge(parent, i).expect("tree edges are simple");
            }
        }
    }

    let mut replacements = Vec::new();
    for v in tree.prime_nodes() {
        let children = tree.node(v).children.clone();
        let reps: Vec<usize> = children
            .iter()
            .map(|&c| tree.node(c).set.first().unwrap())
            .collect();
        let local = labeled_half_grid(children.len(), |a, b| delta.label(reps[a], reps[b]))
            .expect("prime nodes have at least three children");
        replacements.push(glue(&mut graph, &mut provenance, v, children, local));
    }

    PvrResult {
        graph,
        tree,
        provenance,
        replacements,
    }
}

/// Identifies `local`'s root with `v` and its leaf `PointId(a)` with
/// `children[a]`; every other local vertex becomes a new vertex.
fn glue(
    graph: &mut RootedLabeledGraph,
    provenance: &mut Vec<Origin>,
    v: usize,
    children: Vec<usize>,
    local: RootedLabeledGraph,
) -> Replacement {
    let mut vertex_map = Vec::with_capacity(local.vertex_count());
    for u in 0..local.vertex_count() {
        let target = if u == local.root() {
            v
        } else if let Some(p) = local.leaf_point(u) {
            children[p.0]
        } else {
            let w = graph.add_vertex(local.coord(u).copied());
            provenance.push(Origin::Replacement {
                prime: v,
                coord: local.coord(u).copied(),
            });
            w
        };
        vertex_map.push(target);
    }
    for (a, b) in local.edges() {
        graph
            .add_edge(vertex_map[a], vertex_map[b])
            .expect("replacement edges are new");
    }
    for (u, l) in local.labeled_vertices() {
        let target = vertex_map[u];
        match graph.label(target) {
            Some(prev) => assert_eq!(prev, l, "vertex {target} receives two labels"),
            None => graph.set_label(target, Some(l)),
        }
    }
    assert!(
        graph.label(v).is_some(),
        "the replacement root must be a root median"
    );
    Replacement {
        prime: v,
        children,
        local,
        vertex_map,
    }
}

/// Vertex and edge counts of [`pvr_expand`]'s output, predicted from the
/// decomposition tree alone.
pub fn pvr_size(delta: &SymMap) -> (usize, usize) {
    let tree = compute_mdt(delta);
    let mut vertices = tree.len();
    let mut edges = tree.len() - 1;
    for v in tree.prime_nodes() {
        let k = tree.node(v).children.len();
        // H_{k-1} replaces v; its k leaf edges replace the k child edges
        vertices += half_grid_size(k - 1) - 1;
        edges += (k - 2) * (k + 1);
    }
    (vertices, edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PvrReport {
    pub checks: Vec<Check>,
}

impl PvrReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(Check {
            name,
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| "ok".to_string()),
        });
    }
}

/// Re-checks a replacement graph against `delta`: median property, the
/// explains relation, the labeled vertex set, ancestor and path
/// preservation of tree vertices, and where root medians land.
pub fn verify_pvr(result: &PvrResult, delta: &SymMap) -> PvrReport {
    let g = &result.graph;
    let tree = &result.tree;
    let mut report = PvrReport::default();

    report.push(
        "median_graph",
        match g.is_median_graph() {
            Ok(v) if v.is_median() => None,
            Ok(v) => Some(format!("{v:?}")),
            Err(e) => Some(e.to_string()),
        },
    );

    report.push(
        "explains",
        match g.explains(delta) {
            Ok(r) if r.explains() => None,
            Ok(r) => Some(format!(
                "{} mismatching pairs, first ({}, {})",
                r.mismatches.len(),
                delta.name(r.mismatches[0].x.0),
                delta.name(r.mismatches[0].y.0)
            )),
            Err(e) => Some(e.to_string()),
        },
    );

    report.push(
        "labeled_set",
        match result.labeled_set() {
            Ok(w) => {
                let labeled: BTreeSet<usize> = g.labeled_vertices().map(|(v, _)| v).collect();
                (w != labeled).then(|| {
                    let missing: Vec<_> = w.difference(&labeled).collect();
                    let extra: Vec<_> = labeled.difference(&w).collect();
                    format!("unlabeled {missing:?}, unexpected {extra:?}")
                })
            }
            Err(e) => Some(e.to_string()),
        },
    );

    let order = g.ancestor_order();
    let mut ancestor_failure = None;
    let mut path_failure = None;
    'outer: for u in 0..tree.len() {
        let mut chain = Vec::new();
        let mut cur = tree.node(u).parent;
        while let Some(v) = cur {
            if ancestor_failure.is_none() && !order.precedes(u, v) {
                ancestor_failure = Some(format!("tree node {u} is not below {v}"));
            }
            for &a in &chain {
                if !g.separates(a, u, v) {
                    path_failure = Some(format!("path {u}..{v} avoids tree node {a}"));
                    break 'outer;
                }
            }
            chain.push(v);
            cur = tree.node(v).parent;
        }
    }
    report.push("ancestor_preservation", ancestor_failure);
    report.push("tree_paths", path_failure);

    let mut transfer_failure = None;
    let replacement_of: BTreeMap<usize, &Replacement> =
        result.replacements.iter().map(|r| (r.prime, r)).collect();
    'pairs: for x in 0..delta.len() {
        for y in x + 1..delta.len() {
            let (px, py) = (PointId(x), PointId(y));
            let v = tree.lca_of_points(px, py);
            let (lx, ly) = (tree.leaf(px), tree.leaf(py));
            let med = g.median(g.root(), lx, ly);
            let expected = match replacement_of.get(&v) {
                None => Some(v),
                Some(r) => {
                    let (vx, vy) = (tree.child_towards(v, px).unwrap(), tree.child_towards(v, py).unwrap());
                    let ax = r.children.iter().position(|&c| c == vx).unwrap();
                    let ay = r.children.iter().position(|&c| c == vy).unwrap();
                    let local_med = r.local.median(
                        r.local.root(),
                        r.local.leaf_vertex(PointId(ax)).unwrap(),
                        r.local.leaf_vertex(PointId(ay)).unwrap(),
                    );
                    let in_expanded = g.median(v, vx, vy);
                    match (local_med.vertex(), in_expanded.vertex()) {
                        (Some(m), Some(m2)) if r.vertex_map[m] == m2 => Some(m2),
                        _ => None,
                    }
                }
            };
            if med.vertex().is_none() || med.vertex() != expected {
                transfer_failure = Some(format!(
                    "median of (root, {}, {}) is {:?}, expected {:?}",
                    delta.name(x),
                    delta.name(y),
                    med,
                    expected.map(MedianCertificate::Unique)
                ));
                break 'pairs;
            }
        }
    }
    report.push("median_transfer", transfer_failure);
    report
}
