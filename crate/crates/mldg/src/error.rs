//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller passed incompatible arguments (mismatched grids, axis out of
    /// range, wrong dimension).
    #[error("argument error: {0}")]
    Argument(String),

    /// A physical or stabilization parameter violates its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A structural constraint was violated (e.g. a matrix field that should
    /// be traceless is not).
    #[error("constraint error: {0}")]
    Constraint(String),

    /// Configuration text could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// The solution left the representable range (non-finite values or a
    /// sup-norm beyond the blow-up threshold).
    #[error("numerical blow-up at step {step}: {detail}")]
    Blowup { step: u64, detail: String },

    /// A runtime assertion on a provable property failed (energy dissipation,
    /// maximum bound).
    #[error("invariant violation at step {step}: {detail}")]
    Invariant { step: u64, detail: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code for the CLI: 2 config, 3 blow-up, 4 invariant,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parameter(_) | Error::Argument(_) => 2,
            Error::Blowup { .. } => 3,
            Error::Invariant { .. } => 4,
            _ => 1,
        }
    }
}
