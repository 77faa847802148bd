use qdyn_core::CoreError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("density matrix lost positivity at t = {time}: eigenvalue {eigenvalue:e}")]
    Positivity { time: f64, eigenvalue: f64 },
    #[error("singular linear system in block {block}")]
    Singular { block: usize },
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
