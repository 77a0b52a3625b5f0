use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: expected {expected} variables, got {found}")]
    RingMismatch { expected: usize, found: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid Borel move ({i}, {j}): {reason}")]
    InvalidBorelMove { i: usize, j: usize, reason: &'static str },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("ideal is not strongly stable")]
    NotStronglyStable,

    #[error("operation requires a proper ideal, got the unit ideal")]
    UnitIdeal,

    #[error("Hilbert function violates Macaulay's bound between degrees {degree} and {}", degree + 1)]
    NotMacaulayAdmissible { degree: usize },

    #[error("not a Gotzmann-representable Hilbert polynomial: {0}")]
    NotGotzmannRepresentable(String),

    #[error("Hilbert polynomial of degree {degree} is degenerate for {n} variables (needs degree <= n - 2)")]
    DegenerateHilbertPolynomial { degree: usize, n: usize },

    #[error("too many generators for the Taylor complex: {count} > {cap}")]
    GeneratorCap { count: usize, cap: usize },

    #[error("local cohomology table does not vanish at its top degree {degree}; tail sums are not determined")]
    TailNotClosed { degree: i64 },

    #[error("unlucky coordinates: gin trials disagree (seeds {seeds:?})")]
    UnluckyCoordinates { seeds: Vec<u64> },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed user text rather than by an engine.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::UnknownVariable { .. } | Error::InvalidRing(_))
    }
}
