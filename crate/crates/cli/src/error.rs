use serde::Serialize;
use tropforms_core::Error as CoreError;

use crate::document::DocError;

/// Input problems, reported with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocError),
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error("object {0:?} not found")]
    MissingObject(String),
    #[error("object {name:?} is a {found}, expected a {expected}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },
    #[error("{path}: {source}")]
    Core {
        path: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Usage(String),
}

/// Machine-readable form of an error.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub path: Option<String>,
    pub message: String,
}

impl CliError {
    pub fn core(path: impl Into<String>, source: CoreError) -> Self {
        CliError::Core { path: path.into(), source }
    }

    pub fn report(&self) -> ErrorReport {
        let (kind, path) = match self {
            CliError::Document(e) => (
                match e.kind {
                    crate::document::DocErrorKind::Syntax => "syntax",
                    crate::document::DocErrorKind::Parse => "parse",
                    crate::document::DocErrorKind::Schema => "schema",
                },
                Some(e.path.clone()),
            ),
            CliError::Io { path, .. } => ("io", Some(path.clone())),
            CliError::MissingObject(n) => ("missing_object", Some(format!("objects.{n}"))),
            CliError::WrongKind { name, .. } => ("wrong_kind", Some(format!("objects.{name}"))),
            CliError::Core { path, .. } => ("invalid", Some(path.clone())),
            CliError::Usage(_) => ("usage", None),
        };
        let message = match self {
            CliError::Document(e) => e.message.clone(),
            CliError::Core { source, .. } => source.to_string(),
            other => other.to_string(),
        };
        ErrorReport { kind, path, message }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a document path to core errors.
pub trait AtPath<T> {
    fn at(self, path: &str) -> CliResult<T>;
}

impl<T> AtPath<T> for tropforms_core::Result<T> {
    fn at(self, path: &str) -> CliResult<T> {
        self.map_err(|e| CliError::core(path, e))
    }
}
