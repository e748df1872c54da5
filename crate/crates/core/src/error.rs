use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: malformed match document: {source}")]
    MatchParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {message}")]
    MatchValidation { path: PathBuf, message: String },

    #[error("{path}: no registry identifier for player(s): {}", names.join(", "))]
    UnresolvedIdentity { path: PathBuf, names: Vec<String> },

    #[error("{path}:{line}: {message}")]
    Csv {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: duplicate identifier {identifier} (lines {first_line} and {line})")]
    DuplicateIdentifier {
        path: PathBuf,
        identifier: String,
        first_line: u64,
        line: u64,
    },

    #[error("match {match_id} from {path} conflicts with an already loaded match")]
    MatchConflict { match_id: String, path: PathBuf },

    #[error("no matches found in {0}")]
    NoMatches(PathBuf),

    #[error("cannot build a network from an empty match list")]
    EmptyGraph,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("histogram: {0}")]
    Histogram(String),

    #[error("invalid model parameters: {0}")]
    ModelSpec(String),

    #[error("invalid eligibility rules: {0}")]
    InvalidRules(String),

    #[error("no eligible players to rank")]
    EmptyRanking,

    #[error("not enough {role} players: need {needed}, have {available}")]
    RoleShortfall {
        role: crate::Role,
        needed: usize,
        available: usize,
    },

    #[error("unknown player identifier(s): {}", .0.join(", "))]
    UnknownPlayers(Vec<String>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
