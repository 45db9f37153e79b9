use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} exceeds the configured cap of {cap} (set {env} to raise it)")]
    CapExceeded {
        what: String,
        cap: u64,
        env: &'static str,
    },

    /// An identity that must hold exactly did not.
    #[error("identity failed: {name}: {detail}")]
    IdentityFailed { name: String, detail: String },

    #[error("linear system is underdetermined: {unknowns} unknowns but only {equations} moment equations")]
    Underdetermined { unknowns: usize, equations: usize },

    #[error("distance distribution is not combinatorial: {0}")]
    NonCombinatorial(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn identity(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::IdentityFailed {
            name: name.into(),
            detail: detail.into(),
        }
    }
}
