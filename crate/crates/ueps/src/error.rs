use thiserror::Error;

/// Errors produced by problem lookup, parameter validation, and optimizer runs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A hyperparameter or argument is outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A vector length does not match the expected dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The problem registry has no entry under this name.
    #[error("unknown problem '{name}'; valid names: {}", valid.join(", "))]
    UnknownProblem { name: String, valid: Vec<String> },

    /// An objective was evaluated at a point with a NaN or infinite component.
    #[error("non-finite input at component {index}")]
    NonFiniteInput { index: usize },

    /// An objective returned NaN or infinity during an optimizer step.
    #[error("non-finite fitness {value} for particle {particle}")]
    NonFiniteFitness { particle: usize, value: f64 },

    /// An experiment configuration is internally inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
