use thiserror::Error;

use crate::states::StateDecomposition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("operator dimension {requested} exceeds the dense limit of {limit}")]
    Resource { requested: usize, limit: usize },

    #[error("eigensolver did not converge on a {dim}x{dim} block")]
    NoConvergence { dim: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("impossible measurement outcome (probability {probability:e})")]
    ImpossibleOutcome { probability: f64 },

    #[error(
        "discord optimizer did not converge after {evaluations} evaluations \
         (best {best} at theta={theta}, phi={phi})"
    )]
    Optimizer {
        best: f64,
        theta: f64,
        phi: f64,
        evaluations: usize,
    },

    #[error("state does not fit the decomposition ansatz (residual {residual:e} > {tolerance:e})")]
    Decomposition {
        residual: f64,
        tolerance: f64,
        decomposition: Box<StateDecomposition>,
    },

    #[error("step {index} ({label}): {source}")]
    Step {
        index: usize,
        label: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
