use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },

    #[error("element has {got} coordinates, group has {expected} factors")]
    Structure { expected: usize, got: usize },

    #[error("D(G) is abelian (G is an elementary abelian 2-group); the partition does not apply")]
    ElementaryAbelian2,

    #[error("invalid parameters n={n}, r={r}: {reason}")]
    InvalidParameters {
        n: u64,
        r: u32,
        reason: &'static str,
    },

    #[error("block index {index} out of range (there are {count} blocks)")]
    BlockOutOfRange { index: usize, count: usize },

    #[error("vertex index {index} out of range for a graph on {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("graphs have different sizes ({left} vs {right} vertices)")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what} needs {vertices} vertices, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        vertices: usize,
        cap: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no partition labels")]
    MissingPartition,

    #[error("{0}")]
    Usage(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
