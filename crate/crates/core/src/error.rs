use alloc::string::String;

/// Errors raised across the solver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("degenerate replicator state: payoff vanishes on the support")]
    DegenerateState,
    #[error("non-finite value in {0}")]
    Numeric(&'static str),
    #[error("internal invariant violated: {0}")]
    Logic(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("solution failed validation: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! param_err {
    ($($arg:tt)*) => {
        $crate::Error::Parameter(alloc::format!($($arg)*))
    };
}
pub(crate) use param_err;
