//! File formats, commands and figures for the `localizer` tool.

pub mod artifact;
pub mod check;
pub mod cmd;
pub mod report;
pub mod svg;
pub mod wsfile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Artifact(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] localizer_core::Error),
}

impl CliError {
    /// 3 for degenerate workspaces, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(localizer_core::Error::Degenerate(_)) => 3,
            _ => 2,
        }
    }
}
