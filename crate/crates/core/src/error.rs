use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    /// η is numerically zero, where the decay constant is 0/0.
    #[error("decay constant undefined at eta = {eta:e}; use the b = 0 branch")]
    DegenerateEta { eta: f64 },
    #[error("exponential model breaks down at eta = {eta}: {reason}")]
    ModelBreakdown { eta: f64, reason: String },
    #[error("{routine} did not converge: {detail}")]
    NoConvergence { routine: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
