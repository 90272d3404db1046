use thiserror::Error;

/// Errors raised by the group-theoretic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("empty generator list")]
    NoGenerators,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not simple: {0}")]
    NotSimple(String),

    #[error("group is not monolithic primitive: {0}")]
    NotMonolithic(String),

    #[error("module action is reducible")]
    Reducible,

    #[error("cohomology dimension {dim_h1} is not divisible by the endomorphism degree {degree}")]
    NonIntegral { dim_h1: usize, degree: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("catalog error in entry `{entry}`: {message}")]
    Catalog { entry: String, message: String },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("factoring gave up on {0}")]
    FactoringTimeout(String),

    #[error("no sample satisfied the quotient condition")]
    NoAcceptedSamples,

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            column: e.column(),
            message: format!("line {}: {}", e.line(), e),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
