use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word is not a prefix of the given word")]
    NotAPrefix,
    #[error("word is not a suffix of the given word")]
    NotASuffix,
    #[error("invalid directive function: {0}")]
    InvalidSpec(String),
    #[error("palindromic prefixes are not abundant at index {index}: n_(i+1) > 2 n_i + 1")]
    NotAbundant { index: usize },
    #[error("length {length} required at index {index} is not a palindromic-prefix length")]
    MissingLength { index: usize, length: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("seed has {found} palindromic prefixes, expected {expected}")]
    SeedMismatch { expected: usize, found: usize },
    #[error("length sequence is degenerate at index {index}")]
    DegenerateSequence { index: usize },
    #[error("length sequence is not increasing at index {index}")]
    NonIncreasing { index: usize },
    #[error("directive function is not reduced: {0}")]
    NotReduced(String),
    #[error("continued fraction has no period")]
    NotPeriodic,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("stream ended after {available} letters, {requested} requested")]
    StreamExhausted { requested: usize, available: usize },
    #[error("directive function is only tabulated up to {table_len}, index {index} requested")]
    BeyondTable { index: usize, table_len: usize },
    #[error("quadratic values with different radicands cannot be combined")]
    MixedRadicands,
    #[error("value out of supported range: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}
