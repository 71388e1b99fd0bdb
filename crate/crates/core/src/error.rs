use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("distribution has an empty alphabet")]
    EmptyAlphabet,

    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("order must not be NaN")]
    NanOrder,

    #[error("order {order} is not supported by {operation}")]
    UnsupportedOrder { order: f64, operation: &'static str },

    #[error("variance must be positive and finite, got {0}")]
    NonPositiveVariance(f64),

    #[error("row {row} of the transition matrix is not a probability vector (sum {sum})")]
    NotStochastic { row: usize, sum: f64 },

    #[error("order grid is not sorted ascending")]
    UnsortedGrid,

    #[error("{0} must not be empty")]
    EmptyInput(&'static str),

    #[error("weights are not a probability vector: {0}")]
    InvalidWeights(String),

    #[error("mixtures are built from different generators or orders")]
    GeneratorMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("P and Q are mutually singular")]
    MutuallySingular,

    #[error("the tilting integral of order {0} diverges")]
    TiltDiverges(f64),

    #[error("every generator is at infinite divergence from Q")]
    AllGeneratorsInfinite,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("density is negative ({value}) at x = {x}")]
    NegativeDensity { x: f64, value: f64 },

    #[error("density integrates to {computed} on its window, declared {declared}")]
    MassMismatch { computed: f64, declared: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input.
    Validation,
    /// Well-formed input outside the mathematical domain of the operation.
    Domain,
    /// The computation itself failed.
    Numerical,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::SizeMismatch(..)
            | Error::EmptyAlphabet
            | Error::InvalidProbability { .. }
            | Error::NotNormalized(_)
            | Error::NanOrder
            | Error::NonPositiveVariance(_)
            | Error::NotStochastic { .. }
            | Error::UnsortedGrid
            | Error::EmptyInput(_)
            | Error::InvalidWeights(_)
            | Error::GeneratorMismatch
            | Error::InvalidArgument(_) => ErrorCategory::Validation,
            Error::UnsupportedOrder { .. }
            | Error::MutuallySingular
            | Error::TiltDiverges(_)
            | Error::AllGeneratorsInfinite
            | Error::ParameterOutOfRange(_)
            | Error::NegativeDensity { .. }
            | Error::MassMismatch { .. } => ErrorCategory::Domain,
            Error::Numerical(_) => ErrorCategory::Numerical,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
