//! Command-line plumbing around `omlrt_core`: parameter files, sweeps,
//! CSV and SVG output, and the time-domain verification report.

pub mod config;
pub mod plot;
pub mod sweep;
pub mod verify;

use std::path::{Path, PathBuf};

/// Failure classes, each with its own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numeric(_) => 2,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<omlrt_core::Error> for CliError {
    fn from(e: omlrt_core::Error) -> Self {
        use omlrt_core::Error as E;
        match e {
            E::InvalidParams(_) | E::InvalidSweep(_) | E::UnknownPreset(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Path of `file_name` inside `dir`. Only bare file names are accepted, so
/// nothing can land outside the output directory.
pub fn output_path(dir: &Path, file_name: &str) -> CliResult<PathBuf> {
    let bare = Path::new(file_name);
    let plain = bare.components().count() == 1
        && matches!(
            bare.components().next(),
            Some(std::path::Component::Normal(_))
        );
    if !plain {
        return Err(CliError::Usage(format!(
            "refusing to write `{file_name}` outside the output directory"
        )));
    }
    Ok(dir.join(bare))
}

/// Writes `contents` to `dir/file_name`, creating `dir` if needed.
pub fn write_output(dir: &Path, file_name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = output_path(dir, file_name)?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    std::fs::write(&path, contents)
        .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    Ok(path)
}
