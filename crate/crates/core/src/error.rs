use thiserror::Error;

/// Failures while reading or building a mesh.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed {format} data (line {line}): {message}")]
    Parse {
        format: &'static str,
        line: usize,
        message: String,
    },
    #[error("non-triangle face with {count} vertices (face {face})")]
    NonTriangleFace { face: usize, count: usize },
    #[error("face {face} references vertex {index}, but the mesh has {count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        count: usize,
    },
    #[error("face {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("non-manifold edge ({0}, {1}): shared by more than two faces or inconsistently oriented")]
    NonManifoldEdge(usize, usize),
    #[error("non-manifold vertex {0}: incident faces do not form a single fan")]
    NonManifoldVertex(usize),
    #[error("zero-length edge ({0}, {1})")]
    ZeroLengthEdge(usize, usize),
    #[error("degenerate triangle {0} (triangle inequality violated)")]
    DegenerateFace(usize),
    #[error("unsupported mesh format: {0}")]
    UnsupportedFormat(String),
    #[error("mesh has no faces")]
    Empty,
}

/// Failures while running one of the distance engines.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("no source vertices given")]
    NoSources,
    #[error("source vertex {index} out of range (mesh has {count} vertices)")]
    InvalidSource { index: usize, count: usize },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
    #[error("mesh too large for brute-force oracle ({faces} faces, limit {limit})")]
    MeshTooLarge { faces: usize, limit: usize },
    #[error("iteration cap of {0} reached before the window pool drained")]
    IterationCap(usize),
    #[error("failed to start worker pool: {0}")]
    ThreadPool(String),
}

/// A window whose distances admit no planar pseudo source.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("window distances admit no planar pseudo source")]
pub struct InvalidWindow;
