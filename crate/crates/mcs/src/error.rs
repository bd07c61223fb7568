use std::io;
use std::path::{Path, PathBuf};

/// Errors surfaced by the command-line tools.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    /// Malformed input file; `line` is 1-based.
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] mcs_core::Error),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io { path: path.as_ref().to_path_buf(), source }
    }

    /// 2 for bad parameters, 3 for I/O and unreadable input, 4 when a
    /// result fails validation or an internal invariant breaks.
    pub fn exit_code(&self) -> i32 {
        use mcs_core::Error as E;
        match self {
            CliError::Param(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } => 3,
            CliError::Core(e) => match e {
                E::Parameter(_) | E::Budget(_) | E::VertexOutOfRange { .. } | E::SelfLoop(_) => 2,
                E::Validation(_) | E::Logic(_) | E::Contract(_) | E::Numeric(_) | E::DegenerateState => 4,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// A parse failure at a 1-based line of some text input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl LineError {
    pub fn at(self, path: &Path) -> CliError {
        CliError::Parse { path: path.to_path_buf(), line: self.line, message: self.message }
    }
}

pub(crate) fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, LineError> {
    Err(LineError { line, message: message.into() })
}

pub(crate) fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, LineError> {
    match token {
        Some(t) => t.parse().or_else(|_| fail(line, format!("{what} `{t}` is not a non-negative integer"))),
        None => fail(line, format!("missing {what}")),
    }
}

pub(crate) fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
