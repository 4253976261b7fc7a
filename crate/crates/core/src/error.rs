use thiserror::Error;

/// Errors raised by map construction, decomposition and graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing label for pair ({0}, {1})")]
    MissingPair(String, String),
    #[error("conflicting labels for pair ({0}, {1})")]
    ConflictingEntry(String, String),
    #[error("duplicate point name {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point name {0:?}")]
    UnknownPoint(String),
    #[error("pair ({0}, {0}) is not an irreflexive pair")]
    SelfPair(String),
    #[error("label {0:?} is reserved for prime vertices")]
    ReservedLabel(String),
    #[error("subset must not be empty")]
    EmptySubset,
    #[error("subset refers to points outside the map")]
    SubsetOutOfRange,
    #[error("points must be distinct")]
    SamePoint,
    #[error("subset is not a module")]
    NotAModule,
    #[error("parts do not partition the point set")]
    NotAPartition,
    #[error("part {0} of the partition is not a module")]
    PartNotAModule(usize),
    #[error("at least {0} points are required")]
    TooFewPoints(usize),
    #[error("family is not a hierarchy: {0} and {1} overlap")]
    NotAHierarchy(String, String),
    #[error("family must contain the full point set and every singleton")]
    IncompleteFamily,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a median graph: triple ({0}, {1}, {2}) has {3} common interval vertices")]
    NotMedianGraph(usize, usize, usize, usize),
    #[error("median of ({0}, {1}) with the root is unlabeled")]
    UnlabeledMedian(String, String),
    #[error("point {0:?} is already bound to a leaf")]
    PointAlreadyBound(String),
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("hypercube dimension {0} exceeds the cap {1}")]
    DimensionCapExceeded(usize, usize),
    #[error("grid index out of range: ({0}, {1}) for n = {2}")]
    OutOfRange(usize, usize, usize),
    #[error("enumeration budget exceeded: {0} > {1}")]
    BudgetExceeded(u128, u128),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
