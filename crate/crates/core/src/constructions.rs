//! Hypercubes, half-grids and their extended (leaf-appended) versions, with
//! the closed-form medians used to label them.
//!
//! Hypercube vertices are bit masks: coordinate `k` (1-based) is bit `k - 1`.
//! Half-grid vertices are grid coordinates `(i, j)`, `1 <= i, j <= n`, kept
//! when `i = 1`, or `2 <= i` and `i - 1 <= j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::RootedLabeledGraph;
use crate::symmap::{Label, PointId, SymMap};

/// Largest hypercube dimension built unless the caller raises the cap.
pub const DEFAULT_HYPERCUBE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridCoord {
    pub i: usize,
    pub j: usize,
}

impl GridCoord {
    pub fn new(i: usize, j: usize) -> Self {
        GridCoord { i, j }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCoord {
    pub bits: u64,
    pub dim: usize,
}

impl CubeCoord {
    /// Value of the 1-based coordinate `k`.
    pub fn get(&self, k: usize) -> bool {
        self.bits >> (k - 1) & 1 == 1
    }
}

/// Display coordinates attached to constructed vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    Grid(GridCoord),
    Cube(CubeCoord),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Grid(c) => write!(f, "({},{})", c.i, c.j),
            Coord::Cube(c) => {
                for k in 1..=c.dim {
                    f.write_str(if c.get(k) { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
    }
}

/// The hypercube `Q_n`, rooted at the all-ones vertex. Vertex ids are the
/// coordinate bit masks.
pub fn hypercube(n: usize) -> RootedLabeledGraph {
    assert!((1..64).contains(&n), "hypercube dimension must be in 1..64");
    let size = 1usize << n;
    let mut g = RootedLabeledGraph::with_vertices(size);
    for v in 0..size {
        g.set_coord(v, Some(Coord::Cube(CubeCoord { bits: v as u64, dim: n })));
        for k in 0..n {
            let w = v ^ (1 << k);
            if v < w {
                g.add_edge(v, w).expect("fresh hypercube edge");
            }
        }
    }
    g.set_root(size - 1).expect("root exists");
    g
}

/// `Q_n` with point `points[k]` leaf-appended to the unit vector of
/// coordinate `k + 1`; leaves get ids `2^n ..`.
pub fn extended_hypercube(points: &[PointId]) -> Result<RootedLabeledGraph> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let mut g = hypercube(n);
    for (k, &p) in points.iter().enumerate() {
        g.leaf_append(1 << k, p)?;
    }
    Ok(g)
}

/// Vertex id of the median of the root with the leaves of `points[i]` and
/// `points[j]` (0-based, `i != j`) in [`extended_hypercube`].
pub fn hypercube_median(i: usize, j: usize) -> usize {
    (1 << i) | (1 << j)
}

pub fn in_half_grid(n: usize, c: GridCoord) -> bool {
    let GridCoord { i, j } = c;
    (i == 1 && (1..=n).contains(&j)) || ((2..=n).contains(&i) && i - 1 <= j && j <= n)
}

/// Vertex id of `c` in [`half_grid`] and [`extended_half_grid`], which
/// number vertices row by row.
pub fn half_grid_vertex(n: usize, c: GridCoord) -> Option<usize> {
    if !in_half_grid(n, c) {
        return None;
    }
    if c.i == 1 {
        return Some(c.j - 1);
    }
    // row 1 has n vertices, row r >= 2 has n - r + 2
    let offset = n + (2..c.i).map(|r| n - r + 2).sum::<usize>();
    Some(offset + c.j - (c.i - 1))
}

/// Number of vertices of `H_n`.
pub fn half_grid_size(n: usize) -> usize {
    n * (n + 1) / 2 + n - 1
}

/// The half-grid `H_n` (`n >= 2`), rooted at `(1, n)`.
pub fn half_grid(n: usize) -> Result<RootedLabeledGraph> {
    if n < 2 {
        return Err(Error::TooFewPoints(2));
    }
    let mut coords = Vec::with_capacity(half_grid_size(n));
    for i in 1..=n {
        let start = if i == 1 { 1 } else { i - 1 };
        for j in start..=n {
            coords.push(GridCoord::new(i, j));
        }
    }
    let mut g = RootedLabeledGraph::with_vertices(coords.len());
    for (v, &c) in coords.iter().enumerate() {
        debug_assert_eq!(half_grid_vertex(n, c), Some(v));
        g.set_coord(v, Some(Coord::Grid(c)));
        for next in [GridCoord::new(c.i + 1, c.j), GridCoord::new(c.i, c.j + 1)] {
            if let Some(w) = half_grid_vertex(n, next) {
                g.add_edge(v, w)?;
            }
        }
    }
    g.set_root(half_grid_vertex(n, GridCoord::new(1, n)).unwrap())?;
    Ok(g)
}

/// Grid vertex that the leaf `x_k` (1-based, `1 <= k <= n + 1`) hangs from.
pub fn half_grid_attachment(n: usize, k: usize) -> GridCoord {
    if k == 1 {
        GridCoord::new(1, 1)
    } else if k == n + 1 {
        GridCoord::new(n, n)
    } else {
        GridCoord::new(k, k - 1)
    }
}

/// The extended half-grid on `points` (`|points| = n + 1 >= 3`): `H_n` with
/// leaf `x_k = points[k - 1]` appended per [`half_grid_attachment`].
pub fn extended_half_grid(points: &[PointId]) -> Result<RootedLabeledGraph> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(3));
    }
    let n = points.len() - 1;
    let mut g = half_grid(n)?;
    for (k, &p) in points.iter().enumerate() {
        let at = half_grid_vertex(n, half_grid_attachment(n, k + 1)).unwrap();
        g.leaf_append(at, p)?;
    }
    Ok(g)
}

/// Closed-form median of the root with leaves `x_i`, `x_j` in the extended
/// half-grid on `n + 1` leaves: `(i, j - 1)` for `1 <= i < j <= n + 1`.
pub fn halfgrid_median_formula(i: usize, j: usize, n: usize) -> Result<GridCoord> {
    if i < 1 || i >= j || j > n + 1 {
        return Err(Error::OutOfRange(i, j, n));
    }
    Ok(GridCoord::new(i, j - 1))
}

/// Labeled extended half-grid on `k >= 3` leaves bound to `PointId(0..k)`,
/// with each median `(i, j - 1)` labeled `label(i - 1, j - 1)`.
pub fn labeled_half_grid<F>(k: usize, mut label: F) -> Result<RootedLabeledGraph>
where
    F: FnMut(usize, usize) -> Label,
{
    let points: Vec<PointId> = (0..k).map(PointId).collect();
    let mut g = extended_half_grid(&points)?;
    let n = k - 1;
    for a in 0..k {
        for b in a + 1..k {
            let c = halfgrid_median_formula(a + 1, b + 1, n)?;
            let v = half_grid_vertex(n, c).unwrap();
            debug_assert!(g.label(v).is_none(), "median claimed by two leaf pairs");
            g.set_label(v, Some(label(a, b)));
        }
    }
    Ok(g)
}

/// An extended half-grid explaining `delta`, or a rooted star when
/// `|X| = 2`. Leaves follow the point order of `delta`.
pub fn explain_by_halfgrid(delta: &SymMap) -> Result<RootedLabeledGraph> {
    match delta.len() {
        0 | 1 => Err(Error::TooFewPoints(2)),
        2 => {
            let mut g = RootedLabeledGraph::with_vertices(1);
            g.leaf_append(0, PointId(0))?;
            g.leaf_append(0, PointId(1))?;
            g.set_label(0, Some(delta.label(0, 1)));
            Ok(g)
        }
        k => labeled_half_grid(k, |a, b| delta.label(a, b)),
    }
}

/// An extended hypercube explaining `delta`; `|X|` must not exceed `cap`.
pub fn explain_by_hypercube(delta: &SymMap, cap: usize) -> Result<RootedLabeledGraph> {
    let n = delta.len();
    if n < 2 {
        return Err(Error::TooFewPoints(2));
    }
    if n > cap || n >= 63 {
        return Err(Error::DimensionCapExceeded(n, cap));
    }
    let points: Vec<PointId> = (0..n).map(PointId).collect();
    let mut g = extended_hypercube(&points)?;
    for (x, y, l) in delta.pairs() {
        g.set_label(hypercube_median(x, y), Some(l));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MedianCertificate;
    use crate::symmap::tests::delta4;

    #[test]
    fn hypercube_sizes() {
        let q1 = hypercube(1);
        assert_eq!((q1.vertex_count(), q1.edge_count()), (2, 1));
        let q3 = hypercube(3);
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert!(q3.is_median_graph().unwrap().is_median());
        assert_eq!(q3.root(), 7);
    }

    #[test]
    fn extended_hypercube_medians() {
        let points: Vec<PointId> = (0..4).map(PointId).collect();
        let g = extended_hypercube(&points).unwrap();
        assert_eq!(g.vertex_count(), 16 + 4);
        for i in 0..4 {
            for j in i + 1..4 {
                let (li, lj) = (g.leaf_vertex(PointId(i)).unwrap(), g.leaf_vertex(PointId(j)).unwrap());
                assert_eq!(g.median(g.root(), li, lj), MedianCertificate::Unique(hypercube_median(i, j)));
            }
        }
    }

    #[test]
    fn half_grid_shapes() {
        let h2 = half_grid(2).unwrap();
        assert_eq!((h2.vertex_count(), h2.edge_count()), (4, 4));
        let h3 = half_grid(3).unwrap();
        assert_eq!(h3.vertex_count(), 8);
        assert!(half_grid_vertex(3, GridCoord::new(3, 1)).is_none());
        assert!(h3.is_median_graph().unwrap().is_median());
        for n in 2..10 {
            assert_eq!(half_grid(n).unwrap().vertex_count(), half_grid_size(n));
        }
    }

    #[test]
    fn extended_half_grid_medians_match_formula() {
        for k in 3..=6 {
            let points: Vec<PointId> = (0..k).map(PointId).collect();
            let g = extended_half_grid(&points).unwrap();
            let n = k - 1;
            for i in 1..=k {
                for j in i + 1..=k {
                    let m = g.median(
                        g.root(),
                        g.leaf_vertex(PointId(i - 1)).unwrap(),
                        g.leaf_vertex(PointId(j - 1)).unwrap(),
                    );
                    let c = halfgrid_median_formula(i, j, n).unwrap();
                    assert_eq!(m, MedianCertificate::Unique(half_grid_vertex(n, c).unwrap()));
                }
            }
            let rho = halfgrid_median_formula(1, k, n).unwrap();
            assert_eq!(half_grid_vertex(n, rho), Some(g.root()));
        }
    }

    #[test]
    fn median_formula_range() {
        assert_eq!(halfgrid_median_formula(2, 3, 5).unwrap(), GridCoord::new(2, 2));
        assert_eq!(halfgrid_median_formula(1, 6, 5).unwrap(), GridCoord::new(1, 5));
        assert!(halfgrid_median_formula(3, 3, 5).is_err());
        assert!(halfgrid_median_formula(0, 3, 5).is_err());
        assert!(halfgrid_median_formula(1, 7, 5).is_err());
    }

    #[test]
    fn explain_delta4_both_ways() {
        let d = delta4();
        let hg = explain_by_halfgrid(&d).unwrap();
        assert!(hg.explains(&d).unwrap().explains());
        assert_eq!(hg.vertex_count(), half_grid_size(3) + 4);
        let hc = explain_by_hypercube(&d, DEFAULT_HYPERCUBE_CAP).unwrap();
        assert!(hc.explains(&d).unwrap().explains());
        assert_eq!(hc.vertex_count(), 20);
    }

    #[test]
    fn explain_two_points() {
        let d = SymMap::build(&["a", "b"], &[("a", "b", "blue")]).unwrap();
        let star = explain_by_halfgrid(&d).unwrap();
        assert_eq!(star.vertex_count(), 3);
        assert_eq!(star.label(star.root()), d.label_id("blue"));
        assert!(star.explains(&d).unwrap().explains());

        let cube = explain_by_hypercube(&d, 4).unwrap();
        assert_eq!(cube.vertex_count(), 6);
        assert!(cube.explains(&d).unwrap().explains());
    }

    #[test]
    fn hypercube_cap() {
        let d = delta4();
        assert_eq!(explain_by_hypercube(&d, 3).unwrap_err(), Error::DimensionCapExceeded(4, 3));
    }

    #[test]
    fn coord_display() {
        assert_eq!(Coord::Grid(GridCoord::new(2, 5)).to_string(), "(2,5)");
        assert_eq!(Coord::Cube(CubeCoord { bits: 0b0101, dim: 4 }).to_string(), "1010");
    }
}
