use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid hypergraph document: {0}")]
    Schema(String),
    #[error("edge {edge} has size {size}; hyperedges need at least two vertices")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("vertex id {id} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { id: u32, n: usize },
    #[error("edge {edge} lists vertex {id} more than once")]
    DuplicateVertex { edge: usize, id: u32 },
    #[error("edge {edge}: spin table must map the all-minus configuration to 1, got {value}")]
    NotNormalized { edge: usize, value: String },
    #[error("edge {edge}: spin table has {got} entries, expected {expected}")]
    TableSize { edge: usize, got: usize, expected: usize },
    #[error("label set is not a subset of the host label set (vertex {0})")]
    NotASubset(u32),
    #[error("edge {0} does not meet the label set")]
    EdgeMissesLabels(usize),
    #[error("connectivity is undefined for an empty label set")]
    EmptyLabelSet,
    #[error("instance has {n} vertices; brute force is capped at {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("edge {0} is not an Ising edge; the multivariate oracle needs Ising activities")]
    NotIsing(usize),
    #[error("expected {expected} vertex activities, got {got}")]
    ActivityCount { expected: usize, got: usize },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root finder did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("root residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },
    #[error("connected family exceeds the memory cap of {cap} label sets at size {size}")]
    FrontierCap { cap: usize, size: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("|lambda| = {0} lies on the unit circle, where zeros may be dense; refusing")]
    OnUnitCircle(f64),
    #[error("|lambda| = {0} must be strictly below 1")]
    LambdaNotInsideDisk(f64),
    #[error("epsilon = {0} must lie in (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("truncation order {m} needs coefficient depth {depth}, above the cap of {cap}")]
    OrderCap { m: usize, depth: usize, cap: usize },
    #[error("series length {m} exceeds the cap of {cap}")]
    SeriesCap { m: usize, cap: usize },
    #[error("|lambda| > 1 needs symmetric activities for the inversion; edge {0} is not symmetric")]
    AsymmetricInversion(usize),
    #[error("edge size must be at least {min}, got {k}")]
    EdgeSize { k: usize, min: usize },
    #[error("beta = {beta} lies inside the Lee-Yang range for k = {k}; no off-circle witness exists")]
    InsideRange { k: usize, beta: f64 },
    #[error("no root off the unit circle by more than {threshold:e} (best {best:e})")]
    NoWitness { threshold: f64, best: f64 },
    #[error("cosine product constraint needs 2|m| <= k (k = {k}, m = {m})")]
    Infeasible { k: usize, m: i64 },
    #[error("numerical maximum {numeric} disagrees with closed form {closed}")]
    CosineMismatch { closed: f64, numeric: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
