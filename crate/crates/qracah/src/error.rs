use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pole in {context}")]
    Pole { context: String },

    #[error("non-generic parameters: {0}")]
    NonGeneric(String),

    #[error("interpolation stayed ill-conditioned after {attempts} attempts (last condition number {condition:.3e})")]
    DegenerateSampling { attempts: usize, condition: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn pole(context: impl Into<String>) -> Self {
        Error::Pole { context: context.into() }
    }
}
