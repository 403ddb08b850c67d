use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFiniteMatrix,

    #[error("determinant {det} is not 1 within tolerance")]
    DeterminantNotOne { det: Complex64 },

    #[error("{what} lies outside the domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("branch tracking failed for gamma near ({alpha}, {beta}): {detail}")]
    Branch {
        alpha: Complex64,
        beta: Complex64,
        detail: String,
    },

    #[error("degenerate input for {what}: {detail}")]
    Degenerate { what: &'static str, detail: String },

    #[error("rasters have mismatched windows or resolutions")]
    WindowMismatch,

    #[error("operation requires a square window centered at 0 with nx = ny")]
    WindowShape,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed raster file {path}: {detail}")]
    Format { path: String, detail: String },
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn degenerate(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Degenerate {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
