use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed state encoding: {0}")]
    Encoding(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance is unsolvable: {0}")]
    Unsolvable(String),

    #[error("abstract space needs {required} entries but the budget is {budget}")]
    Resource { required: u64, budget: u64 },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
