use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{value} is outside {expected}")]
    OutOfRange { value: String, expected: &'static str },

    #[error("continued fraction terms must be positive")]
    NonPositiveTerm,

    #[error("slope {0} is excluded: need a continued fraction of length at least 2")]
    ExcludedSlope(String),

    #[error("index n must be an integer >= 2, got {0}")]
    InvalidIndex(u32),

    #[error("letters do not alternate between a and b")]
    NotAlternating,

    #[error("word of odd length {0} is not cyclically alternating")]
    OddLength(usize),

    #[error("empty word")]
    EmptyWord,

    #[error("not a subword of the cyclic relator")]
    NotRelatorSubword,

    #[error("CS({slope}) = {cs} does not consist of {c} and {c_plus}", c_plus = c + 1)]
    NotTwoValued { slope: String, cs: String, c: u32 },

    #[error("decomposition of {r} failed verification: <S1,S2,S1,S2> = {built}, CS = {expected}")]
    DecompositionMismatch {
        r: String,
        built: String,
        expected: String,
    },

    #[error("({alpha}, {beta}) is not a Farey edge")]
    NotFareyEdge { alpha: String, beta: String },

    #[error("orbit normalization did not terminate within {0} steps")]
    IterationCap(usize),

    #[error("pattern: {0}")]
    Pattern(String),

    #[error("unbound pattern block {0:?}")]
    UnboundBlock(String),

    #[error("degree {0} outside the supported range 1..=8")]
    Degree(usize),

    #[error("cache: {0}")]
    Cache(String),

    #[error("I/O: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
