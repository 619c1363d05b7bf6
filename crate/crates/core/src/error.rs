use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("no {d}-regular graph on {n} vertices exists (n*d must be even and d < n)")]
    NoGraphsExist { n: usize, d: usize },

    #[error("{what} exceeds the capacity limit {limit}")]
    Capacity { what: String, limit: usize },

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("graph is not {0}-regular")]
    NotRegular(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty admissible interval: {0}")]
    EmptyInterval(String),

    #[error("no convergence after {iterations} iterations (last reference {reference:?})")]
    NonConvergence {
        iterations: usize,
        reference: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
