use netgood_core::equilibrium::Side;
use netgood_core::Error;
use thiserror::Error as ThisError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_NO_PROFILE: i32 = 4;
pub const EXIT_TARGET_RANGE: i32 = 5;
pub const EXIT_SINGULAR: i32 = 6;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("schema error at '{path}': {message}")]
    Schema { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// A perturbation experiment failed on one side; `partial` is the report
    /// built so far.
    #[error("{side} game: {source}")]
    Perturbation {
        side: Side,
        source: Error,
        partial: Option<String>,
    },
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidMatrix(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidGame(_)
        | Error::InvalidPartition(_)
        | Error::InvalidWeights(_) => EXIT_SCHEMA,
        Error::DimensionTooLarge { .. } => EXIT_DIMENSION,
        Error::NoProfile(_) => EXIT_NO_PROFILE,
        Error::CostOutOfRange(_) | Error::PerceivedCostOutOfRange(_) => EXIT_TARGET_RANGE,
        Error::SingularSystem { .. } => EXIT_SINGULAR,
        Error::ConvergenceFailure { .. }
        | Error::CycleDetected { .. }
        | Error::DomainError { .. }
        | Error::NotInterior { .. } => EXIT_FAILURE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } | CliError::Usage(_) => EXIT_SCHEMA,
            CliError::Io { .. } => EXIT_FAILURE,
            CliError::Core(e) | CliError::Perturbation { source: e, .. } => core_exit_code(e),
        }
    }

    /// Report to print on stdout alongside the error, if any.
    pub fn partial_report(&self) -> Option<&str> {
        match self {
            CliError::Perturbation { partial, .. } => partial.as_deref(),
            _ => None,
        }
    }
}
