use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("generator {column} of the relation subgroup is not contained in the ambient subgroup")]
    SubgroupViolation { column: usize },

    #[error("induced map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("map does not respect relations: {0}")]
    RelationViolation(String),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("simplex set is not closed under faces: missing face {missing:?} of {simplex:?}")]
    NotClosed {
        simplex: Vec<usize>,
        missing: Vec<usize>,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("invalid graded ring: {0}")]
    InvalidRing(String),

    #[error("invalid filtered complex: {0}")]
    InvalidFiltered(String),

    #[error("chain pairing is not filtration additive: {0}")]
    NotFiltrationAdditive(String),

    #[error("chain pairing is not a derivation for the differential: {0}")]
    NotDerivation(String),

    #[error("exactness violated at {node} in degree {degree}")]
    ExactnessViolation { node: String, degree: i64 },

    #[error("couple declares no periodicity")]
    NoPeriodicityDeclared,

    #[error("colimit did not stabilize inside the supplied window in degree {0}")]
    NotStabilized(i64),

    #[error("nontrivial group action on coefficients is unsupported")]
    NontrivialActionUnsupported,

    #[error("not a cover: {0}")]
    NotACover(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
