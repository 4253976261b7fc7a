//! Rooted, partially labeled, undirected simple graphs with a designated
//! leaf set, and the median machinery on them.
//!
//! `I(x, y)` is the set of vertices on shortest `x`-`y` paths and the median
//! of a triple is the unique vertex of `I(u,v) ∩ I(u,w) ∩ I(v,w)`, if any. A
//! rooted labeled graph *explains* a symmetric map when, for all distinct
//! leaves `x, y`, the median of `(root, x, y)` carries the label of `{x, y}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::constructions::Coord;
use crate::error::{Error, Result};
use crate::symmap::{Label, PointId, SymMap};

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootedLabeledGraph {
    adj: Vec<Vec<usize>>,
    root: usize,
    leaf_point: Vec<Option<PointId>>,
    point_leaf: Vec<Option<usize>>,
    labels: Vec<Option<Label>>,
    coords: Vec<Option<Coord>>,
}

/// Result of a median query: the unique median, or the offending triple
/// with its common interval vertices (zero or at least two).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MedianCertificate {
    Unique(usize),
    Violation { triple: [usize; 3], common: Vec<usize> },
}

impl MedianCertificate {
    pub fn vertex(&self) -> Option<usize> {
        match self {
            MedianCertificate::Unique(m) => Some(*m),
            MedianCertificate::Violation { .. } => None,
        }
    }
}

/// One pair of leaves whose root median disagrees with the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub x: PointId,
    pub y: PointId,
    pub median: usize,
    pub found: Label,
    pub expected: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExplainReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ExplainReport {
    pub fn explains(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl RootedLabeledGraph {
    /// A graph with `n` isolated vertices rooted at vertex 0.
    pub fn with_vertices(n: usize) -> Self {
        RootedLabeledGraph {
            adj: vec![Vec::new(); n],
            root: 0,
            leaf_point: vec![None; n],
            point_leaf: Vec::new(),
            labels: vec![None; n],
            coords: vec![None; n],
        }
    }

    pub fn add_vertex(&mut self, coord: Option<Coord>) -> usize {
        self.adj.push(Vec::new());
        self.leaf_point.push(None);
        self.labels.push(None);
        self.coords.push(coord);
        self.adj.len() - 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Adds the undirected edge `{u, v}`; loops and parallel edges are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::InvalidGraph(format!("parallel edge {{{u}, {v}}}")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let before = self.adj[u].len();
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
        self.adj[u].len() != before
    }

    pub fn set_root(&mut self, root: usize) -> Result<()> {
        self.check_vertex(root)?;
        self.root = root;
        Ok(())
    }

    pub fn set_label(&mut self, v: usize, label: Option<Label>) {
        self.labels[v] = label;
    }

    pub fn set_coord(&mut self, v: usize, coord: Option<Coord>) {
        self.coords[v] = coord;
    }

    /// Binds the existing vertex `v` to point `p` as a leaf.
    pub fn bind_leaf(&mut self, v: usize, p: PointId) -> Result<()> {
        self.check_vertex(v)?;
        if self.point_leaf.len() <= p.0 {
            self.point_leaf.resize(p.0 + 1, None);
        }
        if self.point_leaf[p.0].is_some() {
            return Err(Error::PointAlreadyBound(format!("#{}", p.0)));
        }
        if let Some(old) = self.leaf_point[v] {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} already bound to point #{}",
                old.0
            )));
        }
        self.point_leaf[p.0] = Some(v);
        self.leaf_point[v] = Some(p);
        Ok(())
    }

    /// Attaches a new degree-one vertex to `v` and binds it to `p`.
    pub fn leaf_append(&mut self, v: usize, p: PointId) -> Result<usize> {
        self.check_vertex(v)?;
        if self.point_leaf.get(p.0).is_some_and(|b| b.is_some()) {
            return Err(Error::PointAlreadyBound(format!("#{}", p.0)));
        }
        let leaf = self.add_vertex(None);
        self.add_edge(v, leaf)?;
        self.bind_leaf(leaf, p)?;
        Ok(leaf)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels[v]
    }

    pub fn coord(&self, v: usize) -> Option<&Coord> {
        self.coords[v].as_ref()
    }

    pub fn leaf_point(&self, v: usize) -> Option<PointId> {
        self.leaf_point[v]
    }

    pub fn leaf_vertex(&self, p: PointId) -> Option<usize> {
        self.point_leaf.get(p.0).copied().flatten()
    }

    /// Number of point slots (bound or not).
    pub fn point_slots(&self) -> usize {
        self.point_leaf.len()
    }

    /// Labeled vertices with their labels, by vertex id.
    pub fn labeled_vertices(&self) -> impl Iterator<Item = (usize, Label)> + '_ {
        self.labels.iter().enumerate().filter_map(|(v, l)| l.map(|l| (v, l)))
    }

    /// Checks simplicity, connectivity and the leaf conditions.
    pub fn validate(&self) -> Result<()> {
        for (u, ns) in self.adj.iter().enumerate() {
            let uniq: BTreeSet<&usize> = ns.iter().collect();
            if uniq.len() != ns.len() || ns.contains(&u) {
                return Err(Error::InvalidGraph(format!("vertex {u} has a loop or parallel edge")));
            }
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        for (v, p) in self.leaf_point.iter().enumerate() {
            if p.is_some() {
                if v == self.root {
                    return Err(Error::InvalidGraph("the root cannot be a leaf".into()));
                }
                if self.adj[v].len() != 1 {
                    return Err(Error::InvalidGraph(format!("leaf vertex {v} has degree {}", self.adj[v].len())));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.distances_from(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Breadth-first distances from `s`; unreachable vertices get [`UNREACHABLE`].
    pub fn distances_from(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices on shortest `x`-`y` paths, sorted.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let dx = self.distances_from(x);
        let dy = self.distances_from(y);
        interval_from(&dx, &dy, y)
    }

    pub fn median(&self, u: usize, v: usize, w: usize) -> MedianCertificate {
        let (du, dv, dw) = (self.distances_from(u), self.distances_from(v), self.distances_from(w));
        median_from(&du, &dv, &dw, [u, v, w])
    }

    /// Definitional median-graph test over all vertex triples.
    ///
    /// Returns the lexicographically first violating triple, if any.
    pub fn is_median_graph(&self) -> Result<MedianGraphVerdict> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let table = IntervalTable::new(self);
        let n = self.adj.len();
        let witness = (0..n).into_par_iter().find_map_first(|a| {
            for b in a + 1..n {
                let ab = table.get(a, b);
                for c in b + 1..n {
                    let count = table.common_count(ab, table.get(a, c), table.get(b, c));
                    if count != 1 {
                        return Some([a, b, c]);
                    }
                }
            }
            None
        });
        Ok(match witness {
            None => MedianGraphVerdict::Median,
            Some(triple) => {
                let [a, b, c] = triple;
                let common = match self.median(a, b, c) {
                    MedianCertificate::Violation { common, .. } => common,
                    MedianCertificate::Unique(m) => vec![m],
                };
                MedianGraphVerdict::NotMedian { triple, common }
            }
        })
    }

    /// Medians of `(root, x, y)` for all pairs of bound points `x < y`.
    ///
    /// Only the triples involving the root are checked; a triple without a
    /// unique median is reported as [`Error::NotMedianGraph`].
    pub fn root_medians(&self) -> Result<Vec<(PointId, PointId, usize)>> {
        let points: Vec<(PointId, usize)> = self
            .point_leaf
            .iter()
            .enumerate()
            .filter_map(|(p, v)| v.map(|v| (PointId(p), v)))
            .collect();
        let droot = self.distances_from(self.root);
        if droot.contains(&UNREACHABLE) {
            return Err(Error::Disconnected);
        }
        let dists: Vec<Vec<u32>> = points.par_iter().map(|&(_, v)| self.distances_from(v)).collect();
        let pairs: Vec<(usize, usize)> = (0..points.len())
            .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
            .collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, vx) = points[i];
                let (y, vy) = points[j];
                match median_from(&droot, &dists[i], &dists[j], [self.root, vx, vy]) {
                    MedianCertificate::Unique(m) => Ok((x, y, m)),
                    MedianCertificate::Violation { triple, common } => Err(Error::NotMedianGraph(
                        triple[0],
                        triple[1],
                        triple[2],
                        common.len(),
                    )),
                }
            })
            .collect()
    }

    /// The set of medians of the root with two distinct leaves.
    pub fn median_set(&self) -> Result<BTreeSet<usize>> {
        Ok(self.root_medians()?.into_iter().map(|(_, _, m)| m).collect())
    }

    /// Checks `delta(x, y) == t(med(root, x, y))` for all distinct points.
    pub fn explains(&self, delta: &SymMap) -> Result<ExplainReport> {
        for p in 0..delta.len() {
            if self.leaf_vertex(PointId(p)).is_none() {
                return Err(Error::InvalidGraph(format!(
                    "point {:?} has no leaf",
                    delta.name(p)
                )));
            }
        }
        let mut report = ExplainReport::default();
        for (x, y, m) in self.root_medians()? {
            if x.0 >= delta.len() || y.0 >= delta.len() {
                continue;
            }
            report.pairs_checked += 1;
            let expected = delta.label(x.0, y.0);
            match self.labels[m] {
                None => {
                    return Err(Error::UnlabeledMedian(
                        delta.name(x.0).to_string(),
                        delta.name(y.0).to_string(),
                    ))
                }
                Some(found) if found != expected => report.mismatches.push(Mismatch {
                    x,
                    y,
                    median: m,
                    found,
                    expected,
                }),
                Some(_) => {}
            }
        }
        Ok(report)
    }

    pub fn ancestor_order(&self) -> AncestorOrder<'_> {
        AncestorOrder {
            graph: self,
            reach: (0..self.adj.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Whether every `u`-`v` path passes through `cut`.
    pub fn separates(&self, cut: usize, u: usize, v: usize) -> bool {
        if cut == u || cut == v {
            return true;
        }
        !self.reachable_avoiding(u, cut).contains(v)
    }

    fn reachable_avoiding(&self, start: usize, avoid: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.adj.len());
        if start == avoid {
            return seen;
        }
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if w != avoid && !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Labels keyed by vertex, for comparisons in tests and reports.
    pub fn label_map(&self) -> BTreeMap<usize, Label> {
        self.labeled_vertices().collect()
    }
}

/// Outcome of [`RootedLabeledGraph::is_median_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MedianGraphVerdict {
    Median,
    NotMedian { triple: [usize; 3], common: Vec<usize> },
}

impl MedianGraphVerdict {
    pub fn is_median(&self) -> bool {
        matches!(self, MedianGraphVerdict::Median)
    }
}

fn interval_from(dx: &[u32], dy: &[u32], y: usize) -> Vec<usize> {
    let d = dx[y];
    if d == UNREACHABLE {
        return Vec::new();
    }
    (0..dx.len())
        .filter(|&v| dx[v] != UNREACHABLE && dy[v] != UNREACHABLE && dx[v] + dy[v] == d)
        .collect()
}

fn median_from(du: &[u32], dv: &[u32], dw: &[u32], triple: [usize; 3]) -> MedianCertificate {
    let [_, v, w] = triple;
    let (uv, uw, vw) = (du[v], du[w], dv[w]);
    let common: Vec<usize> = (0..du.len())
        .filter(|&m| {
            let (a, b, c) = (du[m] as u64, dv[m] as u64, dw[m] as u64);
            a + b == uv as u64 && a + c == uw as u64 && b + c == vw as u64
        })
        .collect();
    if common.len() == 1 {
        MedianCertificate::Unique(common[0])
    } else {
        MedianCertificate::Violation { triple, common }
    }
}

/// All pairwise intervals as packed bit rows, for the triple check.
struct IntervalTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl IntervalTable {
    fn new(g: &RootedLabeledGraph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let dist: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| g.distances_from(s)).collect();
        let pairs = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; pairs * words];
        bits.par_chunks_mut(words)
            .enumerate()
            .for_each(|(idx, row)| {
                let (a, b) = unpair(n, idx);
                let d = dist[a][b];
                for v in 0..n {
                    if dist[a][v] + dist[b][v] == d {
                        row[v / 64] |= 1 << (v % 64);
                    }
                }
            });
        IntervalTable { n, words, bits }
    }

    fn get(&self, a: usize, b: usize) -> &[u64] {
        let idx = a * (2 * self.n - a - 1) / 2 + (b - a - 1);
        &self.bits[idx * self.words..(idx + 1) * self.words]
    }

    fn common_count(&self, x: &[u64], y: &[u64], z: &[u64]) -> u32 {
        x.iter()
            .zip(y)
            .zip(z)
            .map(|((a, b), c)| (a & b & c).count_ones())
            .sum()
    }
}

fn unpair(n: usize, mut idx: usize) -> (usize, usize) {
    let mut a = 0;
    loop {
        let row = n - a - 1;
        if idx < row {
            return (a, a + 1 + idx);
        }
        idx -= row;
        a += 1;
    }
}

/// Lazily evaluated ancestor relation of a rooted graph.
///
/// `u ⪯ v` holds when `v` lies on every path from `u` to the root, that is
/// `v ∈ {u, root}` or removing `v` disconnects `u` from the root.
pub struct AncestorOrder<'g> {
    graph: &'g RootedLabeledGraph,
    reach: Vec<OnceLock<FixedBitSet>>,
}

impl AncestorOrder<'_> {
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        let root = self.graph.root;
        if u == v || v == root {
            return true;
        }
        if u == root {
            return false;
        }
        let reach = self.reach[v].get_or_init(|| self.graph.reachable_avoiding(root, v));
        !reach.contains(u)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.precedes(u, v) || self.precedes(v, u)
    }
}
