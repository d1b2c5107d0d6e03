use bubble_core::basis::BasisError;
use bubble_core::spinchain::SpinError;
use bubble_core::stdmod::StdModError;
use bubble_core::yangbaxter::YbeError;

/// Every way a run can stop early. The exit code follows the variant.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Failure(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cache file {path} is unusable: {why}")]
    Cache { path: String, why: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Failure(_) | CliError::Io { .. } | CliError::Cache { .. } => 1,
        }
    }

    pub fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }
}

impl From<BasisError> for CliError {
    fn from(e: BasisError) -> Self {
        match e {
            BasisError::TooLarge { .. } => CliError::Resource(e.to_string()),
            BasisError::BadLabel { .. } | BasisError::Palette(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<StdModError> for CliError {
    fn from(e: StdModError) -> Self {
        match e {
            StdModError::Basis(b) => b.into(),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<SpinError> for CliError {
    fn from(e: SpinError) -> Self {
        match e {
            SpinError::TooLarge(_) => CliError::Resource(e.to_string()),
            SpinError::ChainLength(_) | SpinError::ZeroQ | SpinError::Site { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<YbeError> for CliError {
    fn from(e: YbeError) -> Self {
        match e {
            YbeError::TooLarge { .. } => CliError::Resource(e.to_string()),
            YbeError::Singular(_) | YbeError::EmptyChain => CliError::Usage(e.to_string()),
            YbeError::Dimension(..) => CliError::Failure(e.to_string()),
        }
    }
}
