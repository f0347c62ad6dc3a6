use thiserror::Error;

/// Errors raised across the embedding pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slots {0} and {1} are equal")]
    EqualSlots(usize, usize),
    #[error("slot {slot} out of range for degree {degree}")]
    SlotOutOfRange { slot: usize, degree: usize },
    #[error("unsupported degree {0}, expected 4 or 6")]
    UnsupportedDegree(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("graph is invalid: {0}")]
    InvalidGraph(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid transition system: {0}")]
    InvalidTransitions(String),
    #[error("vertex {0} is not a rotating 6-vertex")]
    NotRotatingSix(usize),
    #[error("circuit does not match graph: {0}")]
    CircuitMismatch(String),
    #[error("malformed chord diagram: {0}")]
    MalformedDiagram(String),
    #[error("chord {0} is absent")]
    NoSuchChord(usize),
    #[error("chord {0} is positive, expected a negative chord")]
    PositiveChord(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("partition is not permissible: {0}")]
    NotPermissible(String),
    #[error("every chord is positive: the checkerboard surfaces are orientable")]
    OrientableGate,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{vertices} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
