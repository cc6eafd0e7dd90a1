use std::io;

use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("ordering is strict: both arguments are vertex {0}")]
    SameVertex(VertexId),

    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),

    #[error("brute-force oracle refuses n = {n} (cap {cap})")]
    TooLarge { n: usize, cap: usize },

    #[error("seed vertex {0} is isolated")]
    IsolatedSeed(VertexId),

    #[error("access violation: vertex {0} has not been revealed")]
    AccessViolation(VertexId),

    #[error("walk reached vertex {0} with no neighbors")]
    DeadEnd(VertexId),

    #[error("index must be positive")]
    ZeroIndex,

    #[error("empty walk trace")]
    EmptyTrace,

    #[error("walk too short for stride: r = {r} < t_hat = {t_hat}")]
    WalkTooShort { r: usize, t_hat: usize },

    #[error("insufficient collisions: no stratum of the walk repeated an edge")]
    InsufficientCollisions,

    #[error("graph has no triangles")]
    NoTriangles,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("binary graph: {0}")]
    Format(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Short stable tag used in CSV records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::EmptyGraph => "empty_graph",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SameVertex(_) => "same_vertex",
            Error::NotAnEdge(..) => "not_an_edge",
            Error::TooLarge { .. } => "too_large",
            Error::IsolatedSeed(_) => "isolated_seed",
            Error::AccessViolation(_) => "access_violation",
            Error::DeadEnd(_) => "dead_end",
            Error::ZeroIndex => "zero_index",
            Error::EmptyTrace => "empty_trace",
            Error::WalkTooShort { .. } => "walk_too_short",
            Error::InsufficientCollisions => "insufficient_collisions",
            Error::NoTriangles => "no_triangles",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Format(_) => "format",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
