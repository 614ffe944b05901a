use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A problem with the config text. `line` is 1-based; `None` for file-level problems.
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error("{context}: {source}")]
    Model {
        context: String,
        #[source]
        source: droplet_core::Error,
    },

    #[error("output error: {0}")]
    Output(String),
}

impl LabError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        LabError::Config {
            line: Some(line),
            message: message.into(),
        }
    }

    pub(crate) fn config(message: impl Into<String>) -> Self {
        LabError::Config {
            line: None,
            message: message.into(),
        }
    }

    pub(crate) fn model(context: impl Into<String>) -> impl FnOnce(droplet_core::Error) -> Self {
        let context = context.into();
        move |source| LabError::Model { context, source }
    }

    /// Process exit code: 2 for IO failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
