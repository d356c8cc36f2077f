//! Library side of the `mhx` command: the document format and the commands,
//! each producing a textual report.

pub mod commands;
pub mod document;

pub use document::{Backend, Document};

/// Everything that stops a command, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] mhx_core::Error),
    #[error("check failed: {0}")]
    Failed(String),
}

impl CliError {
    /// 0 ok, 1 parse, 2 shape or validity, 3 admissibility, 4 numerical.
    pub fn exit_code(&self) -> u8 {
        use mhx_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 1,
            CliError::Failed(_) => 4,
            CliError::Core(e) => match e {
                E::NoRelativeFiltration(_) | E::Admissibility(_) => 3,
                E::DeltaVerification { .. } | E::DeltaCommutation { .. } | E::Singular | E::Degenerate(_) => 4,
                E::DimensionMismatch { .. }
                | E::InvalidFiltration(_)
                | E::NotNilpotent
                | E::NotMhs { .. }
                | E::NotMorphism { .. }
                | E::Shape { .. }
                | E::Precondition(_)
                | E::InvalidPeriod(_) => 2,
            },
        }
    }
}
