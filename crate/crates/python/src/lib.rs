//! Python bindings: symmetric maps, their decomposition trees and the
//! median graphs that explain them.

use medexplain::cli::{build_explanation, Construction};
use medexplain::constructions::DEFAULT_HYPERCUBE_CAP;
use medexplain::graph::MedianCertificate;
use medexplain::io::{
    describe_label, graph_from_json, graph_to_dot, graph_to_graphml, graph_to_json, map_to_json,
    parse_map, tree_to_dot, tree_to_json, Provenance,
};
use medexplain::oracle::{enumerate_strong_modules, DEFAULT_SUBSET_BUDGET};
use medexplain::symmap::UltrametricVerdict;
use medexplain::{compute_mdt, Error, MdTree, NodeLabel, PointId, PointSubset, RootedLabeledGraph};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A symmetric map: one label for every pair of distinct points.
#[pyclass(name = "SymMap", module = "medexplain", frozen)]
struct PySymMap {
    inner: medexplain::SymMap,
}

impl PySymMap {
    fn point(&self, name: &str) -> PyResult<usize> {
        self.inner
            .point(name)
            .map(|p| p.0)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    fn subset(&self, names: Vec<String>) -> PyResult<PointSubset> {
        let idx = names
            .iter()
            .map(|n| self.point(n))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PointSubset::from_indices(self.inner.len(), idx))
    }

    fn names_of(&self, s: &PointSubset) -> Vec<String> {
        s.iter().map(|p| self.inner.name(p).to_string()).collect()
    }
}

#[pymethods]
impl PySymMap {
    #[new]
    fn new(points: Vec<String>, pairs: Vec<(String, String, String)>) -> PyResult<Self> {
        let inner = medexplain::SymMap::build(&points, &pairs).map_err(to_py)?;
        Ok(PySymMap { inner })
    }

    /// Parses a JSON map document or a tab-separated matrix.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySymMap {
            inner: parse_map(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        map_to_json(&self.inner)
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.alphabet().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn label(&self, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (self.point(x)?, self.point(y)?);
        if x == y {
            return Err(PyValueError::new_err("points must be distinct"));
        }
        Ok(self.inner.label_name(self.inner.label(x, y)).to_string())
    }

    fn is_module(&self, names: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.is_module(&self.subset(names)?))
    }

    fn is_strong_module(&self, names: Vec<String>) -> PyResult<bool> {
        self.inner.is_strong_module(&self.subset(names)?).map_err(to_py)
    }

    fn minimal_module(&self, x: &str, y: &str) -> PyResult<Vec<String>> {
        let m = self
            .inner
            .minimal_module(PointId(self.point(x)?), PointId(self.point(y)?))
            .map_err(to_py)?;
        Ok(self.names_of(&m))
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn is_prime(&self) -> bool {
        self.inner.is_prime()
    }

    /// `(True, None)` for a symbolic ultrametric, otherwise `(False,
    /// (axiom, witness points))`.
    fn ultrametric_check(&self) -> (bool, Option<(String, Vec<String>)>) {
        let names = |ps: &[PointId]| ps.iter().map(|p| self.inner.name(p.0).to_string()).collect();
        match self.inner.ultrametric_check() {
            UltrametricVerdict::Ultrametric => (true, None),
            UltrametricVerdict::ViolatesU1(w) => (false, Some(("U1".into(), names(&w)))),
            UltrametricVerdict::ViolatesU2(w) => (false, Some(("U2".into(), names(&w)))),
        }
    }

    fn mdt(&self) -> PyMdTree {
        PyMdTree {
            tree: compute_mdt(&self.inner),
            delta: self.inner.clone(),
        }
    }

    /// Strong modules found by testing every subset.
    fn strong_modules_bruteforce(&self) -> PyResult<Vec<Vec<String>>> {
        let all = enumerate_strong_modules(&self.inner, DEFAULT_SUBSET_BUDGET).map_err(to_py)?;
        Ok(all.iter().map(|s| self.names_of(s)).collect())
    }

    /// Builds a labeled median graph explaining this map with
    /// `"pvr"`, `"halfgrid"` or `"hypercube"`.
    #[pyo3(signature = (construction = "pvr", cap = DEFAULT_HYPERCUBE_CAP))]
    fn explain(&self, construction: &str, cap: usize) -> PyResult<PyGraph> {
        let c = match construction {
            "pvr" => Construction::Pvr,
            "halfgrid" => Construction::Halfgrid,
            "hypercube" => Construction::Hypercube,
            other => return Err(PyValueError::new_err(format!("unknown construction {other:?}"))),
        };
        let (graph, provenance) = build_explanation(&self.inner, c, cap).map_err(to_py)?;
        Ok(PyGraph {
            graph,
            delta: self.inner.clone(),
            provenance,
            extra_labels: Vec::new(),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "SymMap({} points, {} labels)",
            self.inner.len(),
            self.inner.alphabet().len()
        )
    }
}

/// The modular decomposition tree of a map.
#[pyclass(name = "MdTree", module = "medexplain", frozen)]
struct PyMdTree {
    tree: MdTree,
    delta: medexplain::SymMap,
}

#[pymethods]
impl PyMdTree {
    fn __len__(&self) -> usize {
        self.tree.len()
    }

    /// Vertex sets (strong modules) in sorted order.
    fn strong_modules(&self) -> Vec<Vec<String>> {
        self.tree
            .vertex_sets()
            .iter()
            .map(|s| s.iter().map(|p| self.delta.name(p).to_string()).collect())
            .collect()
    }

    /// `(set, label)` per node in breadth-first order; leaves have no label.
    fn nodes(&self) -> Vec<(Vec<String>, Option<String>)> {
        self.tree
            .nodes()
            .iter()
            .map(|n| {
                let set = n.set.iter().map(|p| self.delta.name(p).to_string()).collect();
                let label = n.label.map(|l| match l {
                    NodeLabel::Prime => "prime".to_string(),
                    NodeLabel::Label(l) => self.delta.label_name(l).to_string(),
                });
                (set, label)
            })
            .collect()
    }

    #[getter]
    fn prime_count(&self) -> usize {
        self.tree.prime_nodes().len()
    }

    fn to_json(&self) -> String {
        tree_to_json(&self.tree, &self.delta)
    }

    fn to_dot(&self) -> String {
        tree_to_dot(&self.tree, &self.delta)
    }
}

/// A rooted graph with leaves bound to map points and optional vertex labels.
#[pyclass(name = "Graph", module = "medexplain", frozen)]
struct PyGraph {
    graph: RootedLabeledGraph,
    delta: medexplain::SymMap,
    provenance: Provenance,
    extra_labels: Vec<String>,
}

#[pymethods]
impl PyGraph {
    /// Reads a JSON graph whose leaves name points of `delta`.
    #[staticmethod]
    fn from_json(text: &str, delta: &PySymMap) -> PyResult<Self> {
        let imported = graph_from_json(text, &delta.inner).map_err(to_py)?;
        Ok(PyGraph {
            graph: imported.graph,
            delta: delta.inner.clone(),
            provenance: imported.provenance,
            extra_labels: imported.extra_labels,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    #[getter]
    fn root(&self) -> usize {
        self.graph.root()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges()
    }

    fn label(&self, v: usize) -> PyResult<Option<String>> {
        self.check_vertex(v)?;
        Ok(self
            .graph
            .label(v)
            .map(|l| describe_label(&self.delta, &self.extra_labels, l)))
    }

    /// Point name of a leaf vertex, `None` for other vertices.
    fn leaf(&self, v: usize) -> PyResult<Option<String>> {
        self.check_vertex(v)?;
        Ok(self
            .graph
            .leaf_point(v)
            .map(|p| self.delta.name(p.0).to_string()))
    }

    fn leaf_vertex(&self, point: &str) -> PyResult<usize> {
        let p = self
            .delta
            .point(point)
            .ok_or_else(|| PyKeyError::new_err(point.to_string()))?;
        self.graph
            .leaf_vertex(p)
            .ok_or_else(|| PyKeyError::new_err(point.to_string()))
    }

    fn is_median_graph(&self) -> PyResult<bool> {
        Ok(self.graph.is_median_graph().map_err(to_py)?.is_median())
    }

    /// The unique median of three vertices, or `None` if there is none.
    fn median(&self, u: usize, v: usize, w: usize) -> PyResult<Option<usize>> {
        for x in [u, v, w] {
            self.check_vertex(x)?;
        }
        Ok(match self.graph.median(u, v, w) {
            MedianCertificate::Unique(m) => Some(m),
            MedianCertificate::Violation { .. } => None,
        })
    }

    /// Whether every pair label equals the label of its median with the root.
    fn explains(&self, delta: &PySymMap) -> PyResult<bool> {
        Ok(self.graph.explains(&delta.inner).map_err(to_py)?.explains())
    }

    fn to_json(&self) -> String {
        graph_to_json(&self.graph, &self.delta, &self.provenance)
    }

    fn to_dot(&self) -> String {
        graph_to_dot(&self.graph, &self.delta, &self.provenance)
    }

    fn to_graphml(&self) -> String {
        graph_to_graphml(&self.graph, &self.delta, &self.provenance)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.graph.vertex_count(),
            self.graph.edge_count()
        )
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v < self.graph.vertex_count() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("no vertex {v}")))
        }
    }
}

#[pymodule]
#[pyo3(name = "medexplain")]
fn medexplain_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySymMap>()?;
    m.add_class::<PyMdTree>()?;
    m.add_class::<PyGraph>()?;
    Ok(())
}
