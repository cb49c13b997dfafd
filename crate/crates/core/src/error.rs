use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("empty label for vertex `{0}`")]
    EmptyLabel(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("edge {from} -> {to} references unknown vertex `{missing}`")]
    DanglingEdge {
        from: String,
        to: String,
        missing: String,
    },

    #[error("reverse orientation is not supported: `{0}`")]
    UnsupportedOrientation(String),

    #[error("{0}")]
    Malformed(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("path is empty")]
    EmptyPath,

    #[error("no edge {from} -> {to} in path")]
    NotAnEdge { from: String, to: String },

    #[error("arc {from} -> {to} out of range for {nodes} nodes")]
    ArcOutOfRange { from: usize, to: usize, nodes: usize },

    #[error("arc {from} -> {to} has no weight")]
    MissingArcWeight { from: usize, to: usize },

    #[error("cycle detected through back arc {from} -> {to}")]
    Cycle { from: usize, to: usize },

    #[error("invalid gap bound `{0}`: must be a positive integer or `inf`")]
    InvalidGap(String),

    #[error("invalid seed #{index}: {reason}")]
    InvalidSeed { index: usize, reason: String },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("oracle requires an acyclic graph")]
    CyclicGraph,

    #[error("invalid generator profile: {0}")]
    InvalidProfile(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }

    /// The underlying error with any line context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.root(),
            other => other,
        }
    }
}
