use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A denominator base or offset left the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Both inequality directions were certified for parameters whose
    /// two sides are not identically equal.
    #[error("contradictory certificate: GEQ cases {geq:?} and LEQ cases {leq:?}")]
    Contradiction { geq: Vec<String>, leq: Vec<String> },

    #[error("infeasible sampling: {feasible} of {draws} draws satisfied t·s > r·aᵢ^p")]
    InfeasibleSampling { feasible: usize, draws: usize },

    #[error("parameters outside every certified regime: {0}")]
    Regime(String),

    #[error("input not sorted ascending: {0}")]
    Sort(String),

    #[error("second derivative changes sign {sign_changes} times on ({lo}, {hi})")]
    UnsupportedShape { sign_changes: usize, lo: f64, hi: f64 },

    #[error("no configuration family admits a feasible ordered point")]
    InfeasibleConfiguration,

    #[error("series does not converge: {0}")]
    Convergence(String),

    #[error("truncation needs {needed} terms, budget is {cap}")]
    Budget { needed: f64, cap: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
