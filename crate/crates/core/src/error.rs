use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be between 1 and 26, got {0}")]
    InvalidRank(usize),
    #[error("unknown letter '{0}'")]
    UnknownLetter(char),
    #[error("generator a{index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("malformed exponent or index '{0}'")]
    MalformedExponent(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph is not deterministic: vertex {vertex} has two '{letter}' edges")]
    NotDeterministic { vertex: usize, letter: char },
    #[error("graph is not connected: vertex {0} unreachable from the basepoint")]
    Disconnected(usize),
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    UnknownVertex { vertex: usize, count: usize },
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("operation requires a non-trivial subgroup")]
    TrivialSubgroup,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration aborted after {0} lattice members")]
    CapExceeded(usize),
}

impl Error {
    /// Input that could not be read, as opposed to a well-formed request that
    /// cannot be carried out.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidRank(_)
                | Error::UnknownLetter(_)
                | Error::GeneratorOutOfRange { .. }
                | Error::MalformedExponent(_)
                | Error::Syntax { .. }
                | Error::NotDeterministic { .. }
                | Error::Disconnected(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
