use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },

    #[error("empty graph")]
    EmptyGraph,

    #[error("invalid paper id {0:?}: ids must be non-empty and contain no comma or line break")]
    InvalidId(String),

    #[error("unknown paper {0:?}")]
    UnknownPaper(String),

    #[error("no declared reference count for paper {0:?}")]
    MissingDeclaredCount(String),

    #[error("paper {paper:?}: declared reference count {declared} is below its {out_degree} references in the edge list")]
    DeclaredBelowOutDegree {
        paper: String,
        declared: u64,
        out_degree: u64,
    },

    #[error("paper {0:?} has conflicting metadata rows")]
    ConflictingMetadata(String),

    #[error("graph has {papers} papers, above the enumeration cap of {cap}; use the fast path (compute) instead")]
    EnumerationCap { papers: usize, cap: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no aggregable members")]
    NoAggregableMembers,

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("only {found} papers qualify, at least {required} are needed")]
    TooFewQualifying { found: usize, required: usize },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
