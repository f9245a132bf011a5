use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot compose: codomain [{left}] does not match domain [{right}]")]
    Composition { left: usize, right: usize },

    #[error("invalid monotone map: {0}")]
    InvalidMap(String),

    #[error("{what} = {value} is outside the allowed range {range}")]
    OutOfRange { what: &'static str, value: i64, range: String },

    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),

    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("not a functor: {0}")]
    NotFunctorial(String),

    #[error("malformed category: {0}")]
    Category(String),

    #[error("arithmetic overflow during exact elimination")]
    Overflow,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("enumeration exceeded the limit of {0} elements")]
    TooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, value: i64, range: impl Into<String>) -> Error {
    Error::OutOfRange { what, value, range: range.into() }
}
