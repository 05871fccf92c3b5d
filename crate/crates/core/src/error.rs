use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("SVD did not converge after {iterations} QR sweeps (Frobenius norm {norm:e})")]
    NoConvergence { norm: f64, iterations: usize },

    /// A matrix expected to be nonsingular after reduction is not. This
    /// means the rank decisions taken along the way disagree with each
    /// other, usually because the tolerance sits inside a singular-value gap.
    #[error("inconsistent rank decisions: arrow {arrow} has sigma_min {sigma_min:e} <= threshold {tau:e}")]
    Inconsistency {
        arrow: usize,
        sigma_min: f64,
        tau: f64,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{stage} {step}: {source}")]
    AtStep {
        stage: &'static str,
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn at_step(self, stage: &'static str, step: usize) -> Self {
        Error::AtStep {
            stage,
            step,
            source: Box::new(self),
        }
    }

    /// The innermost error with step context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for caller mistakes (bad shapes, out-of-range indices); false for
    /// numerical or internal failures.
    pub fn is_argument(&self) -> bool {
        matches!(self.root(), Error::Argument(_))
    }
}
