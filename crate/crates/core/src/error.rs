use thiserror::Error;

/// Errors across the toolkit, grouped by how the CLI maps them to exit codes:
/// input/usage problems exit 2, resource and convergence problems exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("edge weights must be symmetric: mu[{x},{y}] = {forward} but mu[{y},{x}] = {backward}")]
    AsymmetricWeight {
        x: usize,
        y: usize,
        forward: f64,
        backward: f64,
    },

    #[error("edge weight mu[{x},{y}] = {weight} must be positive and finite")]
    InvalidEdgeWeight { x: usize, y: usize, weight: f64 },

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("graph is not connected (vertex {unreached} unreachable from 0)")]
    Disconnected { unreached: usize },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("{context}: vertex set must be nonempty")]
    EmptySet { context: &'static str },

    #[error("subset family requires at least {required} sets, got {got}")]
    TooFewSets { required: usize, got: usize },

    #[error("subset family sets {a} and {b} are not disjoint (both contain vertex {vertex})")]
    SetsNotDisjoint { a: usize, b: usize, vertex: usize },

    #[error("set {set} intersects the designated boundary at vertex {vertex}")]
    SetIntersectsBoundary { set: usize, vertex: usize },

    #[error("{flavor} Rayleigh quotient has zero denominator")]
    ZeroDenominator { flavor: &'static str },

    #[error("Dirichlet domain has empty interior")]
    EmptyInterior,

    #[error("{0} is not a median of the given function")]
    NotAMedian(f64),

    #[error("estimate has wrong shape for this check: expected {expected}, got {got}")]
    EstimateMismatch { expected: String, got: String },

    #[error("refusing to compare heuristic estimates: {0}")]
    IncompatibleCertification(String),

    #[error("nonpositive log argument in bound formula (term {term})")]
    NonpositiveLogArgument { term: usize },

    #[error("family separation must be at least 1, got {0}")]
    ZeroSeparation(usize),

    #[error("r-neighborhoods intersect: need 2r < separation, got r = {r}, separation = {separation}")]
    NeighborhoodsIntersect { r: usize, separation: usize },

    #[error("dense solver budget exceeded: |V| = {size} > {budget}; use the partial solver")]
    DenseBudgetExceeded { size: usize, budget: usize },

    #[error("problem too large for {what}: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("eigensolver did not converge: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("random graph retry budget exhausted after {attempts} attempts")]
    RetryBudgetExhausted { attempts: usize },

    #[error("mesh spacing {h} does not divide dimension {dim} (ratio {ratio})")]
    SpacingMismatch { h: f64, dim: f64, ratio: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code for this error: 2 for input/usage, 3 for resource/numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DenseBudgetExceeded { .. }
            | Error::TooLarge { .. }
            | Error::NoConvergence { .. }
            | Error::RetryBudgetExhausted { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
