use thiserror::Error;

use crate::monomial::ExponentVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),

    #[error("a ring needs at least one variable")]
    NoVariables,

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} requires a nonempty generating set")]
    EmptyGenerators(&'static str),

    #[error("{0} is not defined for the zero ideal")]
    ZeroIdeal(&'static str),

    #[error("parameter t = {0} must be non-negative")]
    NegativeParameter(String),

    #[error("systems live over different contexts")]
    ContextMismatch,

    #[error("splice precondition fails: term {index} of the first system is not contained in the second")]
    SpliceContainment { index: u32 },

    #[error("not a p-family: b_{index}^[p] is not contained in b_{next} (witness {witness})", next = .index + 1)]
    NotPFamily { index: u32, witness: ExponentVector },

    #[error("ideal is not m-primary{}", match .index { Some(e) => format!(" (term {e})"), None => String::new() })]
    NotMPrimary { index: Option<u32> },

    #[error("search box is too small: generator {witness} touches the boundary in coordinate {coordinate}; enlarge the box")]
    BoxTooSmall { coordinate: usize, witness: ExponentVector },

    #[error("search box coordinate exceeds the enumerable range")]
    BoxTooLarge,

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("{op} is not available for systems of kind {kind}")]
    Unsupported { op: &'static str, kind: String },

    #[error("invalid arguments for {op}: {reason}")]
    InvalidArguments { op: &'static str, reason: String },

    #[error("arithmetic with an infinite colength")]
    InfiniteArithmetic,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
