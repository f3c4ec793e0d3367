//! Crate-wide error type and result alias.

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A root bracket did not straddle a sign change.
    #[error("no sign change on bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    /// An iteration exhausted its budget without meeting tolerance.
    #[error("no convergence after {iters} iterations")]
    Convergence { iters: usize },

    /// The eavesdropper's estimator is undefined: the state has no
    /// transverse x component, so its readout carries no frequency signal.
    #[error("degenerate state: estimator variance is unbounded (zero x component)")]
    DegenerateState,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
