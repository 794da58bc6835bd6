//! Error type shared by every module.

use std::fmt;

/// Failure modes of the lab. Payloads are f64 regardless of the working
/// scalar so the type stays non-generic.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// Requested tolerance below what the working precision can deliver.
    Precision { requested: f64, achievable: f64 },
    /// Evaluation budget exhausted; carries the partial result.
    Budget {
        spent: u64,
        partial: f64,
        err_estimate: f64,
    },
    /// Root solver failed to converge; carries the last bracket.
    Solver {
        what: String,
        lo: f64,
        hi: f64,
        rank: Option<u32>,
    },
    /// Value left the admissible range (e.g. an iterate fell below T0).
    Range { what: String, rank: Option<u32> },
    /// Cache file is unreadable or internally inconsistent.
    Integrity(String),
    /// Cache was produced by a different evaluator version.
    Compatibility { found: String, expected: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precision {
                requested,
                achievable,
            } => write!(
                f,
                "precision error: requested tol {requested:.3e}, achievable {achievable:.3e}"
            ),
            Error::Budget {
                spent,
                partial,
                err_estimate,
            } => write!(
                f,
                "budget error: {spent} evaluations spent, partial value {partial:.6e} (err <= {err_estimate:.3e})"
            ),
            Error::Solver { what, lo, hi, rank } => {
                write!(f, "solver error: {what}, bracket [{lo:.6e}, {hi:.6e}]")?;
                if let Some(r) = rank {
                    write!(f, " at rank {r}")?;
                }
                Ok(())
            }
            Error::Range { what, rank } => {
                write!(f, "range error: {what}")?;
                if let Some(r) = rank {
                    write!(f, " at rank {r}")?;
                }
                Ok(())
            }
            Error::Integrity(msg) => write!(f, "integrity error: {msg}"),
            Error::Compatibility { found, expected } => write!(
                f,
                "compatibility error: cache written by evaluator {found}, current {expected}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
