use thiserror::Error;

use crate::covering::CoverVerdict;
use crate::family::Counterexample;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An enumeration would exceed the configured work limit.
    #[error("{what} needs {work} steps, above the limit of {limit} (use a guard override)")]
    GuardExceeded { what: String, work: u128, limit: u128 },

    #[error("not a Bollobás ({k},{t})-tuple: {counterexample}")]
    NotBollobas { k: usize, t: usize, counterexample: Counterexample },

    #[error("invalid cover: {0}")]
    InvalidCover(CoverVerdict),

    #[error("no covering draw after {attempts} attempts ({uncovered} edges left uncovered in the last one)")]
    AttemptsExhausted { attempts: u32, uncovered: u64 },

    /// A checked identity did not hold. Indicates a bug or an input outside the
    /// hypotheses of the check.
    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("family {family}, column {column}: element {element} is outside the ground set [0, {n})")]
    Range { family: usize, column: usize, element: usize, n: usize },

    #[error("family {family}, column {column}: element {element} listed twice")]
    Duplicate { family: usize, column: usize, element: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

/// Upper limit on the number of elementary steps an exhaustive enumeration may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub limit: Option<u128>,
}

impl Guard {
    pub const DEFAULT_LIMIT: u128 = 1_000_000_000;

    pub fn unlimited() -> Self {
        Guard { limit: None }
    }

    pub fn with_limit(limit: u128) -> Self {
        Guard { limit: Some(limit) }
    }

    pub fn is_overridden(&self) -> bool {
        self.limit.is_none()
    }

    pub fn check(&self, what: &str, work: u128) -> Result<()> {
        match self.limit {
            Some(limit) if work > limit => Err(Error::GuardExceeded {
                what: what.to_string(),
                work,
                limit,
            }),
            _ => Ok(()),
        }
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard::with_limit(Self::DEFAULT_LIMIT)
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
