use thiserror::Error;

/// Errors raised while validating shapes or evaluating direction-based indices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("coordinates must be finite")]
    NonFinite,

    #[error("need at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },

    #[error("degenerate edge at vertex {index} (repeated or collinear vertices)")]
    DegenerateEdge { index: usize },

    #[error("shape is not convex at index {index}")]
    NonConvex { index: usize },

    #[error("face {face} is not planar (deviation {deviation:e})")]
    NonPlanarFace { face: usize, deviation: f64 },

    #[error("surface is not closed: edge ({a}, {b}) is used by {count} face(s)")]
    OpenSurface { a: usize, b: usize, count: usize },

    #[error("face {face} references vertex {index} but only {len} vertices exist")]
    IndexOutOfRange { face: usize, index: usize, len: usize },

    #[error("direction is the zero vector")]
    ZeroVector,

    #[error("reference point lies within tolerance of face {face}")]
    DegenerateInterior { face: usize },

    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
}

/// Errors raised by the polygon text and OFF readers.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unexpected end of input: {0}")]
    UnexpectedEof(&'static str),

    #[error(transparent)]
    Geometry(#[from] GeometryError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
