use thiserror::Error;

/// Validation failures of a graph document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("vertex ids must be nonempty")]
    EmptyVertexId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("not a simplex of the complex: {0}")]
    NotASimplex(String),
    #[error("dimension {requested} not materialized (complex built up to dimension {available})")]
    DimensionNotMaterialized { requested: i64, available: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Graph(_)
            | Error::InvalidCharacter(_)
            | Error::InvalidArgument(_)
            | Error::UnknownVertex(_)
            | Error::NotASimplex(_) => 2,
            Error::Precondition(_) | Error::DimensionNotMaterialized { .. } => 3,
            Error::ResourceCap(_) => 4,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Graph(_) => "invalid_graph",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NotASimplex(_) => "not_a_simplex",
            Error::DimensionNotMaterialized { .. } => "dimension_not_materialized",
            Error::Precondition(_) => "precondition",
            Error::ResourceCap(_) => "resource_cap",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
