use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring size {size} exceeds the cap of {max_size}")]
    SizeExceeded { size: u128, max_size: u64 },

    #[error("malformed ring spec: {0}")]
    Malformed(String),

    #[error("corner element {0} is not an idempotent of the base ring")]
    InvalidCornerIdempotent(String),

    #[error("the corner ring of the zero idempotent is the zero ring")]
    ZeroCorner,

    #[error("{0} is not an idempotent")]
    NotIdempotent(String),

    #[error("the construction collapses to the zero ring (1 = 0)")]
    ZeroRing,

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("literal `{literal}` is not an element of {ring}: {reason}")]
    Literal {
        literal: String,
        ring: String,
        reason: String,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no power a^n with 2 <= n <= {0} is regular")]
    NoRegularPower(u32),

    #[error("no strongly pi-regular witness found")]
    NoStrongPiWitness,

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    /// An engine produced a certificate that failed its own re-check.
    #[error("internal verification failure: {0}")]
    Defect(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid witness document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeExceeded { .. } => 2,
            Error::Defect(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
