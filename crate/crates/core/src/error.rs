use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("{what} exceeds the enumeration cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("filter has no ideals at object `{0}`")]
    EmptyFilterComponent(String),

    #[error("filter does not satisfy {axioms}: {detail}")]
    FilterAxioms { axioms: String, detail: String },

    #[error("module is not closed: {0}")]
    NotClosed(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
