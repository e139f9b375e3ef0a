use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is not prime")]
    NotPrime(u32),
    #[error("dimension {0} exceeds the supported maximum of 97")]
    DimensionTooLarge(u32),
    #[error("inverse of zero in F_{0}")]
    InverseOfZero(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("resource cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("conflicting weights for edge {{{u},{v}}}: {first} vs {second}")]
    ConflictingEdge { u: usize, v: usize, first: u32, second: u32 },
    #[error("edge {{{u},{v}}} has weight 0 mod d")]
    ZeroWeight { u: usize, v: usize },
    #[error("improper coloring: vertices {0} and {1} are adjacent and share a color")]
    ImproperColoring(usize, usize),
    #[error("{0}")]
    InvalidColoring(String),
    #[error("exact search refused: {0}")]
    SearchTooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
