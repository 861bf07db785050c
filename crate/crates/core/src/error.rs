use thiserror::Error;

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate bundle identifier `{0}`")]
    DuplicateBundle(String),
    #[error("dangling endpoint: bundle `{bundle}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { bundle: String, vertex: String },
    #[error("multiplicity 0 on bundle `{0}`")]
    ZeroMultiplicity(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown bundle `{0}`")]
    UnknownBundle(String),
    #[error("edge index {index} out of range for bundle `{bundle}`")]
    EdgeIndexOutOfRange { bundle: String, index: u64 },
    #[error("edges do not compose into a path at position {0}")]
    BrokenPath(usize),
    #[error("path is not a simple closed path")]
    NotACycle,
    #[error("set is not hereditary and saturated: {0}")]
    NotHereditarySaturated(String),
    #[error("vertex `{0}` is not a breaking vertex of the given set")]
    NotBreaking(String),
    #[error("the ideal graph requires a nonempty hereditary saturated set")]
    EmptyHereditarySet,
    #[error("edge `{0}` has its range outside the selected vertices")]
    RangeOutsideSelection(String),
    #[error("lattice exceeds the configured bound of {limit} members")]
    LatticeTooLarge { limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
