use geodesic_core::{EngineError, MeshError};

/// Exit status for I/O and parse failures.
pub const EXIT_IO: i32 = 1;
/// Exit status for invalid arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when an engine guard trips (oracle size limit, iteration cap).
pub const EXIT_GUARD: i32 = 3;
/// Exit status when `validate` finds a deviation.
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("validation failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Parse(_) | Self::Mesh(_) => EXIT_IO,
            Self::Usage(_) => EXIT_USAGE,
            Self::Engine(e) => match e {
                EngineError::NoSources | EngineError::InvalidSource { .. } | EngineError::InvalidConfig(_) => EXIT_USAGE,
                EngineError::MeshTooLarge { .. } | EngineError::IterationCap(_) => EXIT_GUARD,
                EngineError::ThreadPool(_) => EXIT_IO,
            },
            Self::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}
