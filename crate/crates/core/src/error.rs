use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside an operation's domain (bad shape, bad range, etc).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: i64, modulus: u64 },

    #[error("matrix is singular over the rationals")]
    Singular,

    /// No odd pivot could be found in `column` during elimination mod 2^t.
    #[error("matrix is not invertible modulo {modulus} (no odd pivot in column {column})")]
    NonInvertible { modulus: u64, column: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
