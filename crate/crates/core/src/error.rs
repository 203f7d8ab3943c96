use std::path::PathBuf;

use thiserror::Error;

/// Which of the four boundary edges of the data rectangle a collinearity
/// check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// `x = x_0`, points `(x_0, y_l, z_{0,l})`.
    Left,
    /// `x = x_n`, points `(x_n, y_l, z_{n,l})`.
    Right,
    /// `y = y_0`, points `(x_k, y_0, z_{k,0})`.
    Bottom,
    /// `y = y_m`, points `(x_k, y_m, z_{k,m})`.
    Top,
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Edge::Left => "left (x = x_0)",
            Edge::Right => "right (x = x_n)",
            Edge::Bottom => "bottom (y = y_0)",
            Edge::Top => "top (y = y_m)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis `{axis}` is not strictly increasing at index {index}")]
    NonMonotoneAxis { axis: &'static str, index: usize },

    #[error("axis `{axis}` needs at least 2 nodes, found {len}")]
    AxisTooShort { axis: &'static str, len: usize },

    #[error("vertical scaling factor g[{k}][{l}] = {value} is outside the open interval (0, 1)")]
    GOutOfRange { k: usize, l: usize, value: f64 },

    #[error("{edge} boundary points are not collinear: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    BoundaryNotCollinear {
        edge: Edge,
        deviation: f64,
        tolerance: f64,
    },

    #[error("an iterated function system needs at least two maps, got {count}")]
    TooFewMaps { count: usize },

    #[error("non-finite value in `{key}`")]
    NonFinite { key: &'static str },

    #[error("shape mismatch in `{key}`: {detail}")]
    Shape { key: &'static str, detail: String },

    #[error("contraction constant {value} is not below 1")]
    ContractionNotStrict { value: f64 },

    #[error("invalid option `{name}`: {detail}")]
    InvalidOption { name: &'static str, detail: String },

    #[error("composed system would hold {requested} maps, above the cap of {cap}")]
    SystemTooLarge { requested: u128, cap: usize },

    #[error("parse error in {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("report serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
