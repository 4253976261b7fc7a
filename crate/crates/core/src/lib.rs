//! Modular decomposition of symmetric maps and rooted, vertex-labeled median
//! graphs that explain them.
//!
//! A symmetric map assigns a label to every pair of distinct points. This
//! crate computes its modular decomposition tree ([`mdt`]) and builds a
//! median graph whose medians with the root reproduce every pair label:
//! extended hypercubes and half-grids ([`constructions`]) work for any map,
//! and prime-vertex replacement ([`pvr`]) expands only the prime nodes of the
//! decomposition tree.
//!
//! ```
//! use medexplain::{pvr::pvr_expand, SymMap};
//!
//! let delta = SymMap::build(
//!     &["a", "b", "c"],
//!     &[("a", "b", "red"), ("a", "c", "blue"), ("b", "c", "green")],
//! )?;
//! let result = pvr_expand(&delta);
//! assert!(result.graph.explains(&delta)?.explains());
//! # Ok::<(), medexplain::Error>(())
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod mdt;
pub mod oracle;
pub mod pvr;
pub mod symmap;

pub use error::{Error, Result};
pub use graph::RootedLabeledGraph;
pub use mdt::{compute_mdt, MdTree, NodeLabel};
pub use pvr::{pvr_expand, PvrResult};
pub use symmap::{Label, PointId, PointSubset, SymMap};
