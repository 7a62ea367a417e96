use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} lies outside [0,1]")]
    Domain(f64),

    #[error("vectors or functionals from different space models: {0}")]
    SpaceMismatch(String),

    #[error("seminorm index {index} is not active in this space model (active: {active})")]
    UnknownSeminorm { index: usize, active: usize },

    #[error("unsupported representation: {0}")]
    Unsupported(String),

    #[error("curve is not Lusin-measurable: {0}")]
    NotLusinMeasurable(String),

    #[error("no uniform-continuity radius achieves tolerance {eps}; certify the modulus on a finer grid")]
    NoModulus { eps: f64 },

    #[error("adaptive quadrature did not converge on [{lo}, {hi}] within {cells} cells")]
    NonConvergent { lo: f64, hi: f64, cells: usize },

    #[error("integration failed on dyadic cell {cell}: {source}")]
    Cell {
        cell: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("uniform Cauchy check failed at level {level}: q(beta_{m} - beta_{n})({t}) = {gap} >= {eps}")]
    CauchyFailure {
        level: usize,
        m: usize,
        n: usize,
        t: f64,
        gap: f64,
        eps: f64,
    },

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
