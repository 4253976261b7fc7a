//! File formats: map files (JSON or TSV matrix), decomposition trees
//! (JSON, DOT) and rooted labeled graphs (JSON, DOT, GraphML).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RootedLabeledGraph;
use crate::mdt::{MdTree, NodeLabel};
use crate::pvr::{Origin, PvrResult};
use crate::symmap::{Label, PointId, SymMap, PRIME_LABEL};

/// JSON form of a map: `{points, labels, pairs: [[x, y, label], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub points: Vec<String>,
    #[serde(default)]
    pub labels: Vec<String>,
    pub pairs: Vec<(String, String, String)>,
}

impl MapFile {
    pub fn from_map(delta: &SymMap) -> MapFile {
        MapFile {
            points: delta.names().to_vec(),
            labels: delta.alphabet().to_vec(),
            pairs: delta
                .pairs()
                .map(|(x, y, l)| {
                    (
                        delta.name(x).to_string(),
                        delta.name(y).to_string(),
                        delta.label_name(l).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<SymMap> {
        SymMap::build_with_alphabet(&self.points, &self.labels, &self.pairs)
    }
}

pub fn map_to_json(delta: &SymMap) -> String {
    serde_json::to_string_pretty(&MapFile::from_map(delta)).expect("map serializes")
}

/// Parses a map file, choosing JSON when the text starts with `{` and a
/// tab-separated square matrix otherwise.
pub fn parse_map(text: &str) -> Result<SymMap> {
    if text.trim_start().starts_with('{') {
        let file: MapFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("map JSON: {e}")))?;
        file.to_map()
    } else {
        parse_tsv_matrix(text)
    }
}

/// Tab-separated square matrix with a header row and column of point names
/// and an empty diagonal. Off-diagonal cells must be symmetric.
pub fn parse_tsv_matrix(text: &str) -> Result<SymMap> {
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').map(str::trim).collect())
        .collect();
    let Some(header) = rows.first() else {
        return Err(Error::Parse("empty matrix".into()));
    };
    let names: Vec<&str> = header.iter().skip(1).copied().collect();
    let n = names.len();
    if rows.len() != n + 1 {
        return Err(Error::Parse(format!(
            "matrix has {} data rows for {n} columns",
            rows.len() - 1
        )));
    }
    let mut entries = Vec::new();
    for (r, row) in rows.iter().enumerate().skip(1) {
        if row.len() != n + 1 {
            return Err(Error::Parse(format!("row {r} has {} cells, expected {}", row.len(), n + 1)));
        }
        if row[0] != names[r - 1] {
            return Err(Error::Parse(format!(
                "row {r} is named {:?} but column {r} is {:?}",
                row[0],
                names[r - 1]
            )));
        }
        for c in 1..=n {
            let cell = row[c];
            if r == c {
                if !cell.is_empty() {
                    return Err(Error::Parse(format!("diagonal cell ({r}, {c}) must be empty")));
                }
                continue;
            }
            let mirror = rows[c][r];
            if cell != mirror {
                return Err(Error::Parse(format!(
                    "asymmetric entries at ({r}, {c}) = {cell:?} and ({c}, {r}) = {mirror:?}"
                )));
            }
            if c > r && !cell.is_empty() {
                entries.push((names[r - 1], names[c - 1], cell));
            }
        }
    }
    SymMap::build(&names, &entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNodeJson {
    pub set: Vec<String>,
    pub label: Option<String>,
    pub children: Vec<TreeNodeJson>,
}

fn node_label_name(delta: &SymMap, label: Option<NodeLabel>) -> Option<String> {
    label.map(|l| match l {
        NodeLabel::Prime => PRIME_LABEL.to_string(),
        NodeLabel::Label(l) => delta.label_name(l).to_string(),
    })
}

fn tree_node_json(tree: &MdTree, delta: &SymMap, i: usize) -> TreeNodeJson {
    let node = tree.node(i);
    TreeNodeJson {
        set: node.set.iter().map(|p| delta.name(p).to_string()).collect(),
        label: node_label_name(delta, node.label),
        children: node
            .children
            .iter()
            .map(|&c| tree_node_json(tree, delta, c))
            .collect(),
    }
}

/// Nested `{set, label, children}` objects starting at the root.
pub fn tree_to_json(tree: &MdTree, delta: &SymMap) -> String {
    serde_json::to_string_pretty(&tree_node_json(tree, delta, tree.root())).expect("tree serializes")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn tree_to_dot(tree: &MdTree, delta: &SymMap) -> String {
    let mut out = String::from("graph mdt {\n  node [shape=ellipse];\n");
    for (i, node) in tree.nodes().iter().enumerate() {
        let set = delta.subset_name(&node.set);
        let (text, shape) = match node_label_name(delta, node.label) {
            Some(l) => (format!("{l}\\n{}", dot_escape(&set)), "ellipse"),
            None => (dot_escape(delta.name(node.set.first().unwrap())), "box"),
        };
        let _ = writeln!(out, "  n{i} [label=\"{text}\", shape={shape}];");
    }
    for (i, node) in tree.nodes().iter().enumerate() {
        for &c in &node.children {
            let _ = writeln!(out, "  n{i} -- n{c};");
        }
    }
    out.push_str("}\n");
    out
}

/// One vertex of the JSON graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub root: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// JSON graph: `{vertices: [{id, label?, leaf?, root?, provenance?}], edges: [[id, id]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(usize, usize)>,
}

/// Per-vertex provenance strings for export.
pub type Provenance = Vec<Option<String>>;

/// Provenance strings of a plain construction: the vertex coordinates.
pub fn coord_provenance(g: &RootedLabeledGraph, kind: &str) -> Provenance {
    (0..g.vertex_count())
        .map(|v| g.coord(v).map(|c| format!("{kind}:{c}")))
        .collect()
}

/// Provenance strings of a replacement graph: `mdt:{set}` for tree nodes,
/// `replacement:{set}:(i,j)` for glued-in vertices.
pub fn pvr_provenance(result: &PvrResult, delta: &SymMap) -> Provenance {
    result
        .provenance
        .iter()
        .map(|o| {
            Some(match o {
                Origin::Mdt(i) => format!("mdt:{}", delta.subset_name(&result.tree.node(*i).set)),
                Origin::Replacement { prime, coord } => {
                    let set = delta.subset_name(&result.tree.node(*prime).set);
                    match coord {
                        Some(c) => format!("replacement:{set}:{c}"),
                        None => format!("replacement:{set}"),
                    }
                }
            })
        })
        .collect()
}

fn label_text(delta: &SymMap, extra: &[String], l: Label) -> String {
    let i = l.0 as usize;
    if i < delta.alphabet().len() {
        delta.label_name(l).to_string()
    } else {
        extra[i - delta.alphabet().len()].clone()
    }
}

pub fn graph_to_file(g: &RootedLabeledGraph, delta: &SymMap, provenance: &Provenance) -> GraphFile {
    GraphFile {
        vertices: (0..g.vertex_count())
            .map(|v| VertexJson {
                id: v,
                label: g.label(v).map(|l| label_text(delta, &[], l)),
                leaf: g.leaf_point(v).map(|p| delta.name(p.0).to_string()),
                root: v == g.root(),
                provenance: provenance.get(v).cloned().flatten(),
            })
            .collect(),
        edges: g.edges(),
    }
}

pub fn graph_to_json(g: &RootedLabeledGraph, delta: &SymMap, provenance: &Provenance) -> String {
    serde_json::to_string_pretty(&graph_to_file(g, delta, provenance)).expect("graph serializes")
}

/// A graph read back from JSON. Labels not in the map's alphabet get ids
/// past it and their names are kept in `extra_labels`.
#[derive(Debug, Clone)]
pub struct ImportedGraph {
    pub graph: RootedLabeledGraph,
    /// File vertex id of each graph vertex.
    pub ids: Vec<usize>,
    pub extra_labels: Vec<String>,
    pub provenance: Provenance,
}

pub fn graph_from_json(text: &str, delta: &SymMap) -> Result<ImportedGraph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let mut index = BTreeMap::new();
    for (i, v) in file.vertices.iter().enumerate() {
        if index.insert(v.id, i).is_some() {
            return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
        }
    }
    let mut g = RootedLabeledGraph::with_vertices(file.vertices.len());
    let mut extra_labels: Vec<String> = Vec::new();
    let mut roots = 0;
    for (i, v) in file.vertices.iter().enumerate() {
        if v.root {
            roots += 1;
            g.set_root(i)?;
        }
        if let Some(name) = &v.label {
            let id = match delta.label_id(name) {
                Some(l) => l,
                None => {
                    let pos = match extra_labels.iter().position(|e| e == name) {
                        Some(p) => p,
                        None => {
                            extra_labels.push(name.clone());
                            extra_labels.len() - 1
                        }
                    };
                    Label((delta.alphabet().len() + pos) as u32)
                }
            };
            g.set_label(i, Some(id));
        }
        if let Some(name) = &v.leaf {
            let p = delta.point(name).ok_or_else(|| Error::UnknownPoint(name.clone()))?;
            g.bind_leaf(i, p).map_err(|_| Error::PointAlreadyBound(name.clone()))?;
        }
    }
    if roots != 1 {
        return Err(Error::Parse(format!("graph must mark exactly one root, found {roots}")));
    }
    for &(a, b) in &file.edges {
        let ia = *index.get(&a).ok_or(Error::UnknownVertex(a))?;
        let ib = *index.get(&b).ok_or(Error::UnknownVertex(b))?;
        g.add_edge(ia, ib)?;
    }
    let ids = file.vertices.iter().map(|v| v.id).collect();
    let provenance = file.vertices.into_iter().map(|v| v.provenance).collect();
    Ok(ImportedGraph {
        graph: g,
        ids,
        extra_labels,
        provenance,
    })
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

fn median_flags(g: &RootedLabeledGraph) -> Vec<bool> {
    let mut flags = vec![false; g.vertex_count()];
    if let Ok(set) = g.median_set() {
        for m in set {
            flags[m] = true;
        }
    }
    flags
}

/// DOT with the root drawn as a double circle, leaves as named boxes,
/// labeled vertices filled by label and root medians marked `median=true`.
pub fn graph_to_dot(g: &RootedLabeledGraph, delta: &SymMap, provenance: &Provenance) -> String {
    let medians = median_flags(g);
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for (v, &is_median) in medians.iter().enumerate() {
        let mut attrs: Vec<String> = Vec::new();
        if let Some(p) = g.leaf_point(v) {
            attrs.push(format!("label=\"{}\"", dot_escape(delta.name(p.0))));
            attrs.push("shape=box".into());
        } else if let Some(l) = g.label(v) {
            attrs.push(format!("label=\"{}\"", dot_escape(&label_text(delta, &[], l))));
            attrs.push(format!("fillcolor=\"{}\"", PALETTE[l.0 as usize % PALETTE.len()]));
        } else {
            attrs.push("label=\"\"".into());
        }
        if v == g.root() {
            attrs.push("shape=doublecircle".into());
        }
        if is_median {
            attrs.push("median=true".into());
            attrs.push("penwidth=2".into());
        }
        if let Some(Some(p)) = provenance.get(v) {
            attrs.push(format!("provenance=\"{}\"", dot_escape(p)));
        }
        if let Some(c) = g.coord(v) {
            attrs.push(format!("coord=\"{c}\""));
        }
        let _ = writeln!(out, "  v{v} [{}];", attrs.join(", "));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn graph_to_graphml(g: &RootedLabeledGraph, delta: &SymMap, provenance: &Provenance) -> String {
    let medians = median_flags(g);
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n\
         \x20 <key id=\"leaf\" for=\"node\" attr.name=\"leaf\" attr.type=\"string\"/>\n\
         \x20 <key id=\"root\" for=\"node\" attr.name=\"root\" attr.type=\"boolean\"/>\n\
         \x20 <key id=\"median\" for=\"node\" attr.name=\"median\" attr.type=\"boolean\"/>\n\
         \x20 <key id=\"provenance\" for=\"node\" attr.name=\"provenance\" attr.type=\"string\"/>\n\
         \x20 <key id=\"coord\" for=\"node\" attr.name=\"coord\" attr.type=\"string\"/>\n\
         \x20 <graph id=\"G\" edgedefault=\"undirected\">\n",
    );
    for (v, &is_median) in medians.iter().enumerate() {
        let _ = writeln!(out, "    <node id=\"v{v}\">");
        if let Some(l) = g.label(v) {
            let _ = writeln!(out, "      <data key=\"label\">{}</data>", xml_escape(&label_text(delta, &[], l)));
        }
        if let Some(p) = g.leaf_point(v) {
            let _ = writeln!(out, "      <data key=\"leaf\">{}</data>", xml_escape(delta.name(p.0)));
        }
        if v == g.root() {
            out.push_str("      <data key=\"root\">true</data>\n");
        }
        if is_median {
            out.push_str("      <data key=\"median\">true</data>\n");
        }
        if let Some(Some(p)) = provenance.get(v) {
            let _ = writeln!(out, "      <data key=\"provenance\">{}</data>", xml_escape(p));
        }
        if let Some(c) = g.coord(v) {
            let _ = writeln!(out, "      <data key=\"coord\">{c}</data>");
        }
        out.push_str("    </node>\n");
    }
    for (i, (a, b)) in g.edges().into_iter().enumerate() {
        let _ = writeln!(out, "    <edge id=\"e{i}\" source=\"v{a}\" target=\"v{b}\"/>");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// Names of mismatch labels, resolving ids past the alphabet.
pub fn describe_label(delta: &SymMap, extra: &[String], l: Label) -> String {
    label_text(delta, extra, l)
}

/// Point names of a leaf pair.
pub fn pair_names(delta: &SymMap, x: PointId, y: PointId) -> (String, String) {
    (delta.name(x.0).to_string(), delta.name(y.0).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::explain_by_halfgrid;
    use crate::mdt::compute_mdt;
    use crate::pvr::pvr_expand;
    use crate::symmap::tests::{delta4, delta5};

    #[test]
    fn json_map_round_trip() {
        let d = delta5();
        assert_eq!(parse_map(&map_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn json_map_missing_pair() {
        let text = r#"{"points": ["a", "b", "c"], "labels": ["x"], "pairs": [["a","b","x"], ["a","c","x"]]}"#;
        assert_eq!(parse_map(text).unwrap_err(), Error::MissingPair("b".into(), "c".into()));
    }

    #[test]
    fn tsv_matrix() {
        let text = "\ta\tb\tc\na\t\tx\ty\nb\tx\t\ty\nc\ty\ty\t\n";
        let d = parse_map(text).unwrap();
        assert_eq!(d.names(), ["a", "b", "c"]);
        assert_eq!(d.label_name(d.label(0, 2)), "y");

        let asym = "\ta\tb\na\t\tx\nb\ty\t\n";
        match parse_map(asym).unwrap_err() {
            Error::Parse(msg) => assert!(msg.contains("(1, 2)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = "\ta\tb\tc\na\t\tx\ty\nb\tx\t\t\nc\ty\t\t\n";
        assert_eq!(parse_map(missing).unwrap_err(), Error::MissingPair("b".into(), "c".into()));
    }

    #[test]
    fn tree_json_shape() {
        let d = delta5();
        let json = tree_to_json(&compute_mdt(&d), &d);
        let root: TreeNodeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(root.label.as_deref(), Some("prime"));
        assert_eq!(root.set.len(), 5);
        assert_eq!(root.children.len(), 3);
        assert_eq!(root.children[2].label.as_deref(), Some("green"));
        assert_eq!(root.children[0].label, None);
    }

    #[test]
    fn tree_dot_mentions_every_node() {
        let d = delta5();
        let dot = tree_to_dot(&compute_mdt(&d), &d);
        assert!(dot.starts_with("graph mdt {"));
        assert_eq!(dot.matches(" -- ").count(), 7);
        assert!(dot.contains("prime\\n{a,b,c,d,e}"));
    }

    #[test]
    fn graph_json_round_trip() {
        let d = delta5();
        let r = pvr_expand(&d);
        let prov = pvr_provenance(&r, &d);
        let text = graph_to_json(&r.graph, &d, &prov);
        let back = graph_from_json(&text, &d).unwrap();
        let (a, b) = (&back.graph, &r.graph);
        assert_eq!(a.vertex_count(), b.vertex_count());
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.root(), b.root());
        for v in 0..a.vertex_count() {
            assert_eq!(a.label(v), b.label(v));
            assert_eq!(a.leaf_point(v), b.leaf_point(v));
            assert_eq!(a.coord(v), None);
        }
        assert_eq!(back.provenance, prov);
        assert!(back.extra_labels.is_empty());
        assert!(text.contains("\"provenance\": \"replacement:{a,b,c,d,e}:(2,1)\""));
    }

    #[test]
    fn unknown_labels_get_fresh_ids() {
        let d = delta4();
        let g = explain_by_halfgrid(&d).unwrap();
        let mut file = graph_to_file(&g, &d, &Vec::new());
        let v = file.vertices.iter_mut().find(|v| v.label.is_some()).unwrap();
        v.label = Some("orange".into());
        let text = serde_json::to_string(&file).unwrap();
        let back = graph_from_json(&text, &d).unwrap();
        assert_eq!(back.extra_labels, vec!["orange".to_string()]);
        assert!(!back.graph.explains(&d).unwrap().explains());
    }

    #[test]
    fn graph_json_rejects_bad_files() {
        let d = delta4();
        let no_root = r#"{"vertices": [{"id": 0}], "edges": []}"#;
        assert!(matches!(graph_from_json(no_root, &d), Err(Error::Parse(_))));
        let bad_leaf = r#"{"vertices": [{"id": 0, "root": true}, {"id": 1, "leaf": "zz"}], "edges": [[0, 1]]}"#;
        assert_eq!(graph_from_json(bad_leaf, &d).unwrap_err(), Error::UnknownPoint("zz".into()));
        let bad_edge = r#"{"vertices": [{"id": 0, "root": true}], "edges": [[0, 4]]}"#;
        assert_eq!(graph_from_json(bad_edge, &d).unwrap_err(), Error::UnknownVertex(4));
    }

    #[test]
    fn dot_and_graphml_flag_medians() {
        let d = delta4();
        let g = explain_by_halfgrid(&d).unwrap();
        let prov = coord_provenance(&g, "halfgrid");
        let dot = graph_to_dot(&g, &d, &prov);
        assert_eq!(dot.matches("median=true").count(), 6);
        assert!(dot.contains("shape=doublecircle"));
        let xml = graph_to_graphml(&g, &d, &prov);
        assert_eq!(xml.matches("<data key=\"median\">true</data>").count(), 6);
        assert_eq!(xml.matches("<edge ").count(), g.edge_count());
        assert!(xml.contains("<data key=\"provenance\">halfgrid:(1,3)</data>"));
    }
}
