use std::fmt;

use crate::space::Space;

/// Which weight sequence a positivity violation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    P,
    Q,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::P => f.write_str("p"),
            Weight::Q => f.write_str("q"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A weight term violated its sign requirement (`p_0 > 0`, `p_k >= 0`, `q_k > 0`).
    #[error("positivity violation: {weight}_{index} = {value} ({requirement})")]
    Positivity {
        weight: Weight,
        index: usize,
        value: String,
        requirement: &'static str,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported matrix class ({from}, {to}): {reason}")]
    UnsupportedPair {
        from: Space,
        to: Space,
        reason: &'static str,
    },
    #[error("invalid truncation config: {0}")]
    InvalidConfig(String),
    #[error("invalid scalar {text:?}: {reason}")]
    Scalar { text: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
