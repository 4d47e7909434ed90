use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word has no period set")]
    EmptyWord,

    #[error("zero must be a period")]
    ZeroNotPeriod,

    #[error("invalid period set: {0}")]
    InvalidPeriodSet(String),

    #[error("{q} is not a period of the set")]
    NotAPeriod { q: usize },

    #[error("periods must be positive, got p={p} q={q}")]
    NonPositivePeriod { p: usize, q: usize },

    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: u32, alphabet_size: u32 },

    #[error("invalid word text {0:?}: expected letters a..z")]
    WordSyntax(String),

    #[error("invalid autocorrelation text {0:?}: expected '0'/'1' characters")]
    AutocorrelationSyntax(String),

    #[error("expected a gamma set for length {expected}, found length {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("length {n} outside the brute-force guard 1..={max} (use force to override)")]
    GuardExceeded { n: usize, max: usize },

    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
