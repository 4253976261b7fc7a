//! Strong modules, the maximal strong partition and the modular
//! decomposition tree (MDT).
//!
//! The tree is built top-down. For a node with point set `S`, a label `i` is
//! looked for whose "label differs from `i`" graph on `S` is disconnected; its
//! components are the children and the node is complete with label `i`.
//! Otherwise the node is prime and each child is grown greedily with
//! module closures that stop as soon as they reach an already assigned part.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::symmap::{Label, PointId, PointSubset, SymMap};

/// Inner-vertex label of the decomposition tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Prime,
    Label(Label),
}

/// Type of the quotient over the maximal strong partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    Complete(Label),
    Prime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdNode {
    pub set: PointSubset,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// `None` for leaves (and for trees built from a bare hierarchy).
    pub label: Option<NodeLabel>,
}

/// Rooted tree whose vertices are strong modules ordered by inclusion.
/// Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdTree {
    nodes: Vec<MdNode>,
    leaf_of: Vec<usize>,
    depth: Vec<usize>,
}

impl MdTree {
    fn from_nodes(nodes: Vec<MdNode>) -> MdTree {
        let n = nodes[0].set.universe();
        let mut leaf_of = vec![usize::MAX; n];
        let mut depth = vec![0; nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                depth[i] = depth[p] + 1;
            }
            if node.children.is_empty() {
                leaf_of[node.set.first().expect("leaves are singletons")] = i;
            }
        }
        MdTree { nodes, leaf_of, depth }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[MdNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &MdNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// Node of the singleton `{p}`.
    pub fn leaf(&self, p: PointId) -> usize {
        self.leaf_of[p.0]
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.nodes[i].children.is_empty()
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn inner_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !self.is_leaf(i))
    }

    pub fn prime_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].label == Some(NodeLabel::Prime))
            .collect()
    }

    pub fn has_prime(&self) -> bool {
        self.nodes.iter().any(|n| n.label == Some(NodeLabel::Prime))
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.nodes[a].parent.unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.nodes[b].parent.unwrap();
        }
        while a != b {
            a = self.nodes[a].parent.unwrap();
            b = self.nodes[b].parent.unwrap();
        }
        a
    }

    /// Lowest common ancestor of the leaves of two points.
    pub fn lca_of_points(&self, x: PointId, y: PointId) -> usize {
        self.lca(self.leaf(x), self.leaf(y))
    }

    /// The child of `v` whose set contains point `p`.
    pub fn child_towards(&self, v: usize, p: PointId) -> Option<usize> {
        self.nodes[v]
            .children
            .iter()
            .copied()
            .find(|&c| self.nodes[c].set.contains(p.0))
    }

    /// `u` lies in the subtree of `v` (inclusive).
    pub fn is_descendant(&self, u: usize, v: usize) -> bool {
        self.nodes[u].set.is_subset(&self.nodes[v].set)
    }

    /// Vertex sets of all nodes, sorted.
    pub fn vertex_sets(&self) -> Vec<PointSubset> {
        let mut sets: Vec<PointSubset> = self.nodes.iter().map(|n| n.set.clone()).collect();
        sets.sort();
        sets
    }
}

fn components_avoiding(delta: &SymMap, members: &[usize], label: Label) -> Vec<PointSubset> {
    let n = delta.len();
    let mut seen = PointSubset::empty(n);
    let mut comps = Vec::new();
    for &start in members {
        if seen.contains(start) {
            continue;
        }
        let mut comp = PointSubset::singleton(n, start);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in members {
                if !seen.contains(w) && delta.label(u, w) != label {
                    seen.insert(w);
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Maximal strong partition of `delta` restricted to `domain` (|domain| >= 2).
pub(crate) fn partition_within(
    delta: &SymMap,
    domain: &PointSubset,
) -> (Vec<PointSubset>, PartitionKind) {
    let members = domain.to_vec();
    debug_assert!(members.len() >= 2);

    let mut present = Vec::new();
    for (a, &x) in members.iter().enumerate() {
        for &y in &members[a + 1..] {
            let l = delta.label(x, y);
            if !present.contains(&l) {
                present.push(l);
            }
        }
    }
    present.sort();

    let mut found: Option<(Vec<PointSubset>, Label)> = None;
    for &label in &present {
        let comps = components_avoiding(delta, &members, label);
        if comps.len() > 1 {
            assert!(
                found.is_none(),
                "two labels disconnect the same point set; the map is not a function"
            );
            found = Some((comps, label));
            if !cfg!(debug_assertions) {
                break;
            }
        }
    }
    if let Some((mut parts, label)) = found {
        parts.sort();
        return (parts, PartitionKind::Complete(label));
    }

    let n = delta.len();
    let mut assigned = PointSubset::empty(n);
    let mut parts = Vec::new();
    for &v in &members {
        if assigned.contains(v) {
            continue;
        }
        let mut part = PointSubset::singleton(n, v);
        for &w in &members {
            if part.contains(w) || assigned.contains(w) {
                continue;
            }
            let mut seed = part.to_vec();
            seed.push(w);
            if let Some(grown) = delta.closure_within(domain, &seed, Some(&assigned)) {
                if grown != *domain {
                    part = grown;
                }
            }
        }
        assigned.union_with(&part);
        parts.push(part);
    }
    parts.sort();
    (parts, PartitionKind::Prime)
}

/// The partition of the points into maximal proper strong modules, and
/// whether the quotient over it is complete or prime.
pub fn maximal_strong_partition(delta: &SymMap) -> Result<(Vec<PointSubset>, PartitionKind)> {
    if delta.len() < 2 {
        return Err(Error::TooFewPoints(2));
    }
    Ok(partition_within(delta, &delta.full_set()))
}

/// Computes the labeled modular decomposition tree of `delta`.
///
/// Nodes are numbered breadth-first from the root; children are sorted by
/// smallest contained point. Panics on an empty map.
pub fn compute_mdt(delta: &SymMap) -> MdTree {
    assert!(!delta.is_empty(), "decomposition of an empty map");
    let mut nodes = vec![MdNode {
        set: delta.full_set(),
        parent: None,
        children: Vec::new(),
        label: None,
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if nodes[i].set.len() < 2 {
            continue;
        }
        let (parts, kind) = partition_within(delta, &nodes[i].set);
        nodes[i].label = Some(match kind {
            PartitionKind::Complete(l) => NodeLabel::Label(l),
            PartitionKind::Prime => {
                debug_assert!(parts.len() >= 3, "prime node with fewer than three children");
                NodeLabel::Prime
            }
        });
        for part in parts {
            let c = nodes.len();
            nodes.push(MdNode {
                set: part,
                parent: Some(i),
                children: Vec::new(),
                label: None,
            });
            nodes[i].children.push(c);
            queue.push_back(c);
        }
    }
    MdTree::from_nodes(nodes)
}

/// All strong modules of `delta`, sorted.
pub fn strong_modules(delta: &SymMap) -> Vec<PointSubset> {
    compute_mdt(delta).vertex_sets()
}

/// Unlabeled tree of a hierarchy, with edges given by maximal proper inclusion.
pub fn tree_from_hierarchy(universe: usize, family: &[PointSubset]) -> Result<MdTree> {
    let mut sets: Vec<PointSubset> = family.to_vec();
    if sets.iter().any(|s| s.universe() != universe) {
        return Err(Error::SubsetOutOfRange);
    }
    sets.sort();
    sets.dedup();
    for (a, s) in sets.iter().enumerate() {
        for t in &sets[a + 1..] {
            if s.overlaps(t) {
                return Err(Error::NotAHierarchy(format!("{s:?}"), format!("{t:?}")));
            }
        }
    }
    let full = PointSubset::full(universe);
    let has_all = sets.contains(&full)
        && (0..universe).all(|p| sets.contains(&PointSubset::singleton(universe, p)));
    if !has_all || universe == 0 {
        return Err(Error::IncompleteFamily);
    }
    let parent_of = |s: &PointSubset| -> Option<&PointSubset> {
        sets.iter()
            .filter(|t| *t != s && s.is_subset(t))
            .min_by_key(|t| t.len())
    };

    let mut nodes = vec![MdNode {
        set: full.clone(),
        parent: None,
        children: Vec::new(),
        label: None,
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let current = nodes[i].set.clone();
        let kids: Vec<PointSubset> = sets
            .iter()
            .filter(|s| **s != current && parent_of(s) == Some(&current))
            .cloned()
            .collect();
        for set in kids {
            let c = nodes.len();
            nodes.push(MdNode {
                set,
                parent: Some(i),
                children: Vec::new(),
                label: None,
            });
            nodes[i].children.push(c);
            queue.push_back(c);
        }
    }
    Ok(MdTree::from_nodes(nodes))
}
