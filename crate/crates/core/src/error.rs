use thiserror::Error;

/// Every failure the library can report.
///
/// The variants are grouped by what went wrong rather than by module, so a
/// caller (the CLI in particular) can map them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    Range(String),
    #[error("polynomial division is not exact: {0}")]
    Divisibility(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not symmetric in block {0}")]
    NotSymmetric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("irregular value: subset {subset:?} sums to 1")]
    Irregular { subset: Vec<usize> },
    #[error("matrix does not have rank 2")]
    Rank,
    #[error("invalid chamber: {0}")]
    Chamber(String),
    #[error("quotient ring is infinite-dimensional: no pure power of `{0}` is a leading monomial")]
    InfiniteDimensional(String),
    #[error("variable tables differ")]
    TableMismatch,
    #[error("identification map error: {0}")]
    Map(String),
    #[error("invalid characteristic data: {0}")]
    Validity(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the input point or weights rather than by a bug
    /// or the environment.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Irregular { .. } | Error::Rank | Error::Chamber(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
