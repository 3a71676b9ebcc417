//! Error type shared across the crate.
//!
//! Variants are grouped by how the CLI maps them to exit codes: parse errors
//! (malformed input files or generator specs), validation errors (inputs that
//! parse but violate a contract), and I/O failures. Library code returns
//! `Result<T>`; nothing panics on bad user input.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed text input; `line` is 1-based within the offending file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally valid input violating a documented precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A supremum was requested over an empty cube set (e.g. every family
    /// scale exceeds the grid). Silently returning 0 would corrupt suprema,
    /// so this is always a hard error.
    #[error("no family cube contains cell {cell:?} (grid shape {shape:?}, scales {scales:?})")]
    EmptyCubeSet {
        cell: Vec<usize>,
        shape: Vec<usize>,
        scales: Vec<usize>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
