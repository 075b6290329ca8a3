use thiserror::Error;

use crate::frobenius::GorensteinFptCertificate;
use crate::ring::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    Context,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("quotient is not Artinian (some variable has no pure power in the leading-term ideal)")]
    NotArtinian,

    #[error("ring is not F-split at level e = {e}: the Fedder colon lies in n^[{q}]")]
    NotSplit { e: u32, q: u64 },

    /// The Fedder colon at e = 1 is not generated by one element modulo
    /// `I^[p]`. The certificate is still available for inspection.
    #[error("Fedder colon is not principal modulo I^[p] (ring is not Gorenstein?)")]
    NotPrincipal(Box<GorensteinFptCertificate>),

    #[error("complex is not minimal: map {map} has a unit entry at ({row}, {col})")]
    Minimality { map: usize, row: usize, col: usize },

    /// Raised when no linear form over the prime field passes the three
    /// F-pure cut conditions. The existence argument needs an infinite field.
    #[error("no suitable linear form over F_{p} after {tried} candidates (the existence argument requires an infinite field)")]
    FieldTooSmall {
        p: u32,
        tried: usize,
        partial: Vec<Polynomial>,
    },

    #[error("computation budget exceeded: {what} needs more than {budget} cells")]
    Budget { what: String, budget: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
