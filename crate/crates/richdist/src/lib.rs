//! File formats, reports, figures and the command-line front end for
//! `richdist-core`.

use std::path::{Path, PathBuf};

pub mod cli;
pub mod figures;
pub mod points_file;
pub mod report;
pub mod svg;
pub mod sweep;

pub use points_file::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] richdist_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot render an empty point set")]
    EmptyFigure,
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io { path: path.to_path_buf(), source }
    }
}
