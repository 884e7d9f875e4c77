use dielectric_momentum::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 1 for domain errors, 2 for usage and I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::Io { .. }
                | CoreError::Parse(_)
                | CoreError::InvalidModel(_)
                | CoreError::InvalidRecord { .. }
                | CoreError::InvalidArgument(_) => 2,
                _ => 1,
            },
        }
    }
}
