use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invariant violated ({invariant}): {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("assumption violated ({assumption}): {detail}")]
    Assumption {
        assumption: &'static str,
        detail: String,
    },

    #[error("singular face block {face}: |1 - a^q w^n| = {magnitude:e}")]
    SingularBlock { face: usize, magnitude: f64 },

    #[error("no convergence after {steps} steps (residual {residual:e})")]
    NonConvergence { steps: usize, residual: f64 },

    #[error("enumeration budget exceeded: {raw} raw systems > budget {budget}; try a smaller graph")]
    Budget { raw: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(invariant: &'static str, detail: impl Into<String>) -> Error {
    Error::Invariant {
        invariant,
        detail: detail.into(),
    }
}

pub(crate) fn assumption(assumption: &'static str, detail: impl Into<String>) -> Error {
    Error::Assumption {
        assumption,
        detail: detail.into(),
    }
}
