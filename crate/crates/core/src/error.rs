use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("size guardrail: {0}")]
    Guardrail(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("mate unavailable: {0}")]
    MateUnavailable(String),

    /// An internal consistency check failed. Never expected; indicates a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("undefined name {0:?}")]
    Dangling(String),

    #[error("unknown command {0:?}")]
    UnknownCommand(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Prefixes the message with where it happened, keeping the variant.
    pub fn context(self, at: &str) -> Error {
        use Error::*;
        let p = |m: String| format!("{at}: {m}");
        match self {
            Shape(m) => Shape(p(m)),
            Guardrail(m) => Guardrail(p(m)),
            InvalidCategory(m) => InvalidCategory(p(m)),
            InvalidFunctor(m) => InvalidFunctor(p(m)),
            InvalidTransformation(m) => InvalidTransformation(p(m)),
            InvalidDiagram(m) => InvalidDiagram(p(m)),
            NotAPartialOrder(m) => NotAPartialOrder(p(m)),
            Precondition(m) => Precondition(p(m)),
            MateUnavailable(m) => MateUnavailable(p(m)),
            Invariant(m) => Invariant(p(m)),
            Parse(m) => Parse(p(m)),
            Dangling(m) => Dangling(format!("{m} (in {at})")),
            UnknownCommand(m) => UnknownCommand(m),
            Io(m) => Io(p(m)),
        }
    }
}
