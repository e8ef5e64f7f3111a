use thiserror::Error;

/// Errors raised across the crate. Vertex and cell indices are 0-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex index {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("edge ({0}, {1}) has weight zero; absent edges are not stored")]
    ZeroWeight(usize, usize),

    #[error("loop at vertex {vertex} has non-positive weight {weight}")]
    NonPositiveLoop { vertex: usize, weight: f64 },

    #[error("non-finite weight on edge ({0}, {1})")]
    NonFiniteWeight(usize, usize),

    #[error("more than one directed edge stored for the ordered pair ({0}, {1})")]
    ParallelEdges(usize, usize),

    #[error("weights are not symmetric: w({0},{1}) != w({1},{0})")]
    AsymmetricWeights(usize, usize),

    #[error("matrix is not square: {0} x {1}")]
    NotSquare(usize, usize),

    #[error("matrix is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("Seidel operator order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("matrix rows do not share a constant row sum")]
    NonConstantRowSum,

    #[error("vector is not half zeros and half one repeated constant")]
    NotHalfAndHalf,

    #[error("induced subgraph on {0} is not regular")]
    NotRegularInduced(String),

    #[error("vertex {vertex} is adjacent to {count} of the {size} vertices of cell {cell}; expected 0, half or all")]
    BadAdjacencyCount {
        vertex: usize,
        cell: usize,
        count: usize,
        size: usize,
    },

    #[error("vertex {vertex} attaches to half of cell {cell} with unequal weights")]
    UnequalWeights { vertex: usize, cell: usize },

    #[error("edge ({0}, {1}) joins two different cells")]
    CrossCellEdge(usize, usize),

    #[error("category-1 edges of cell {0} do not share one weight per direction")]
    NonuniformCategory1Weights(usize),

    #[error("cell {cell} has an odd number ({count}) of category-2 vertices")]
    OddCategory2Count { cell: usize, count: usize },

    #[error("category-2 vertices of cell {0} do not split evenly over complementary halves with uniform weights")]
    NonComplementaryHalves(usize),

    #[error("switched matrix needs loop weight {weight} < 0 at vertex {vertex}")]
    NegativeLoopWeight { vertex: usize, weight: f64 },

    #[error(
        "diagonal entry {vertex} does not match the off-diagonal absolute row sum; not a Laplacian"
    )]
    InconsistentDiagonal { vertex: usize },

    #[error("graph of order {0} is too large for brute-force isomorphism (max 12)")]
    TooLarge(usize),

    #[error("matrix has zero trace and cannot be normalized to a state")]
    ZeroTrace,

    #[error("density matrix trace is {0} instead of 1")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("bipartition {m} x {n} does not match operator order {order}")]
    BadBipartition { m: usize, n: usize, order: usize },

    #[error("strength scan needs a maximum order of at least 4, got {0}")]
    ScanTooSmall(usize),

    #[error("switched adjacency deviates from U A U by {0:e}")]
    VerificationFailed(f64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
