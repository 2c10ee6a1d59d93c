use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed count line {line:?}: {reason}")]
    MalformedCountLine { line: String, reason: String },

    #[error("{path}:{line}: {source}")]
    CountFile {
        path: PathBuf,
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("corpus contains no word tokens")]
    EmptyCorpus,

    #[error("max n-gram order must lie in 1..=5, got {0}")]
    InvalidMaxOrder(usize),

    #[error("n-gram lookup takes 1..=5 tokens, got {0}")]
    InvalidArity(usize),

    #[error("index artifact has version {found}, this build reads version {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("corrupt index artifact: {0}")]
    CorruptArtifact(String),

    #[error("hamming distance is undefined for lengths {left} and {right}")]
    UnequalLengths { left: usize, right: usize },

    #[error("prior model requires a positive corpus token total")]
    EmptyPriorModel,

    #[error("channel decay must lie strictly between 0 and 1, got {0}")]
    InvalidDecay(f64),

    #[error("candidate set is empty")]
    NoCandidates,

    #[error("invalid corrector config: {0}")]
    InvalidConfig(String),

    #[error("text too short: no errors can be induced at rate {rate}")]
    TextTooShort { rate: f64 },

    #[error("token index {index} out of range for a stream of {len} tokens")]
    TokenIndexMismatch { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
