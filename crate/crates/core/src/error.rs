use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one of the CLI exit
/// codes through [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("map pieces disagree on the switching manifold (column {column} differs by {gap:e})")]
    Continuity { column: usize, gap: f64 },

    #[error("no unique {word}-cycle: det(I - M) = {det:e}")]
    NoUniqueCycle { word: String, det: f64 },

    #[error("{word}-cycle does not close: residual {residual:e} exceeds {tolerance:e}")]
    ClosureFailure {
        word: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("QR iteration did not converge for a {n}x{n} matrix after {iterations} iterations")]
    NonConvergence { n: usize, iterations: usize },

    #[error("orbit diverged at iterate {iterate} (norm {norm:e})")]
    Divergence { iterate: usize, norm: f64 },

    #[error("non-finite state at iterate {iterate}")]
    NonFiniteState { iterate: usize },

    #[error("sampled set is not a circle: {0}")]
    NotACircle(String),

    #[error("too few samples: got {got}, need {need}")]
    TooFewSamples { got: usize, need: usize },

    #[error("lift continuation is ambiguous at sample {index} (image gap {gap})")]
    AmbiguousLift { index: usize, gap: f64 },

    #[error("rotation counts are not coprime: m = {m}, p = {p}")]
    NotCoprime { m: u32, p: u32 },

    #[error("orbit ordering violated at position {position}")]
    OrderingViolated { position: usize },

    #[error("orbit point {index} lies on a symbol boundary (t = {t})")]
    OnBoundary { index: usize, t: f64 },

    #[error("no sign change across [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("det(I - M) changes sign inside the bracket near eta = {eta}")]
    LostUniqueness { eta: f64 },

    #[error("classification methods disagree: determinant test says {determinant}, side sampling says {sides}")]
    MethodDisagreement { determinant: String, sides: String },

    #[error("word is not admissible anywhere on the slice")]
    EmptyAdmissibleSet,

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// CLI exit code: 2 domain error, 3 numerical error, 4 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::DimensionMismatch { .. }
            | Error::Continuity { .. }
            | Error::NoUniqueCycle { .. }
            | Error::NoSignChange { .. }
            | Error::EmptyAdmissibleSet
            | Error::Io(_) => 2,
            Error::MethodDisagreement { .. } => 4,
            _ => 3,
        }
    }

    /// Stable variant name for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "Domain",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Continuity { .. } => "Continuity",
            Error::NoUniqueCycle { .. } => "NoUniqueCycle",
            Error::ClosureFailure { .. } => "ClosureFailure",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::Divergence { .. } => "Divergence",
            Error::NonFiniteState { .. } => "NonFiniteState",
            Error::NotACircle(_) => "NotACircle",
            Error::TooFewSamples { .. } => "TooFewSamples",
            Error::AmbiguousLift { .. } => "AmbiguousLift",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::OrderingViolated { .. } => "OrderingViolated",
            Error::OnBoundary { .. } => "OnBoundary",
            Error::NoSignChange { .. } => "NoSignChange",
            Error::LostUniqueness { .. } => "LostUniqueness",
            Error::MethodDisagreement { .. } => "MethodDisagreement",
            Error::EmptyAdmissibleSet => "EmptyAdmissibleSet",
            Error::Io(_) => "Io",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
