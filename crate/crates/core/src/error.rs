use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller handed us something outside an operation's domain.
    #[error("invalid input: {0}")]
    Input(String),
    /// An exact search was asked to run past its configured size cap.
    #[error("{what} is limited to length {limit}, got {actual} (override with {env})")]
    Capability {
        what: &'static str,
        limit: usize,
        actual: usize,
        env: &'static str,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
