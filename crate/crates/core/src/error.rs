use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("support graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("cannot merge vertex {0} with itself")]
    InvalidMerge(usize),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("instance has {n} vertices, above the limit of {limit} for {what}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("instance is not a metric: {0}")]
    NotMetric(String),

    #[error("cut is not constant on the fiber of vertex {vertex}")]
    NotFiberConstant { vertex: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("solver failed: {0}")]
    SolverFailed(String),
}

impl Error {
    /// Failures of a randomized or conditional algorithm, as opposed to misuse.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::SolverFailed(_) | Error::InvariantViolation(_))
    }
}
