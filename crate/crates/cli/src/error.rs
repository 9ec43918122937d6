use std::path::PathBuf;

/// Failures surfaced by the command-line front end. Each maps to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{}:{line}:{column}: {message}", path.display())]
    Input { path: PathBuf, line: u64, column: usize, message: String },
    #[error("{}: {message}", path.display())]
    InputFile { path: PathBuf, message: String },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] seneca_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use seneca_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Input { .. } | CliError::InputFile { .. } => 3,
            CliError::Numeric(_) => 4,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                E::InvalidConfig(_) | E::UnknownTag { .. } | E::OddStepSupport(_) | E::SupportTooSmall { .. } => 2,
                E::EmptySample | E::ZeroCount(_) | E::DuplicateLabel(_) | E::EmptyInput | E::SampleTooSmall { .. } => 3,
                _ => 4,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
