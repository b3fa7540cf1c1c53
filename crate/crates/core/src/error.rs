use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("loop at vertex {0} rejected")]
    LoopRejected(usize),
    #[error("graph would need {0} vertices, capacity is 64")]
    CapacityExceeded(usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("graph6 parse error: {0}")]
    ParseError(String),
    #[error("forbidden graph has no edges")]
    EmptyForbiddenGraph,
    #[error("decomposition lemma needs 2 <= chi(F) <= p-1, got chi = {chi}, p = {p}")]
    LemmaInapplicable { chi: usize, p: usize },
    #[error("family is empty")]
    EmptyFamily,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("power iteration did not converge within {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
