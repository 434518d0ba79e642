use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the command-line exit codes: usage, domain and
/// parameter problems are caller mistakes (2), consistency failures signal a
/// bug or a violated mathematical guarantee (3).
#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HeckeError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HeckeError::Usage(_) | HeckeError::Domain(_) | HeckeError::Parameter(_) => 2,
            HeckeError::Io(_) => 2,
            HeckeError::Consistency(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HeckeError>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::HeckeError::Usage(format!($($arg)*)) };
}

macro_rules! consistency {
    ($($arg:tt)*) => { $crate::error::HeckeError::Consistency(format!($($arg)*)) };
}

pub(crate) use consistency;
pub(crate) use usage;
