//! Verification harness: random instances, suites, example reproduction,
//! single computations, JSON reports and a result cache.

pub mod cache;
pub mod compute;
pub mod corpus;
pub mod instances;
pub mod report;
pub mod reproduce;
pub mod suites;

use thiserror::Error;

pub use report::{JobSpec, Verdict, VerdictReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite {name:?}; known suites: {known}")]
    UnknownSuite { name: String, known: String },
    #[error("unknown example {id:?}; known examples: 2.12, 2.13")]
    UnknownExample { id: String },
    #[error("unknown command {name:?}; known commands: {known}")]
    UnknownCommand { name: String, known: String },
    #[error("{0}")]
    Config(String),
    #[error("corpus {path}: {message}")]
    Corpus { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] rrlab_core::Error),
}

impl HarnessError {
    /// Whether the error stems from the job description rather than from a
    /// computation.
    pub fn is_configuration(&self) -> bool {
        match self {
            HarnessError::Algebra(e) => is_input_error(e),
            _ => true,
        }
    }
}

/// Errors caused by malformed or unsuitable input.
pub fn is_input_error(e: &rrlab_core::Error) -> bool {
    use rrlab_core::Error::*;
    matches!(
        e,
        NotPrime(_)
            | InvalidRing(_)
            | Syntax { .. }
            | UnknownVariable { .. }
            | ZeroDenominator { .. }
            | RingMismatch
            | ArityMismatch { .. }
            | NotMPrimary(_)
            | NonMonomialInput
            | InvalidArgument(_)
            | JNotContained
    )
}
