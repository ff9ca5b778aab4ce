use std::path::PathBuf;

/// Errors produced by the pipeline stages.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Fewer than two non-gap sectors were found; the zone pitch is undefined.
    #[error("degenerate zone layout: {0}")]
    DegenerateLayout(String),

    /// Transfer-function parameters describe an unstable or non-physical system.
    #[error("unstable sensor parameters: {0}")]
    UnstableParams(String),

    /// The identification optimizer did not meet its tolerance within the iteration cap.
    #[error("identification did not converge: {0}")]
    NoConvergence(String),

    /// Input trace is too short for frequency-domain recovery.
    #[error("trace too short: {len} samples (minimum {min})")]
    TraceTooShort { len: usize, min: usize },

    /// A position coincides with a sensor; the observation geometry is undefined.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// Scenario name not recognized.
    #[error("unknown scenario: {0}")]
    UnknownScenario(String),

    /// No estimates remain after excluding the burn-in interval.
    #[error("no estimates remain after burn-in of {0} s")]
    EmptyAfterBurnIn(f64),

    /// Configuration file missing or malformed.
    #[error("config error in {path}: {msg}")]
    Config { path: PathBuf, msg: String },

    /// Data file (CSV) missing or malformed.
    #[error("data error in {path}: {msg}")]
    Data { path: PathBuf, msg: String },

    /// Invalid argument to an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A pipeline stage failed; carries the stage name for diagnostics.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code for the CLI: 2 config, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::Data { .. } => 3,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
