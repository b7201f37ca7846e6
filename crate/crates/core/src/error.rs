use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported cone for {0}")]
    UnsupportedCone(&'static str),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// A bounded search returned Unknown where a definite answer was required.
    #[error("relation undecided at bound {bound} while {context}")]
    Bounded { bound: u64, context: String },

    #[error("monoid of ideals is not cancellative: {0}")]
    NotCancellative(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    /// Two independent decision routes disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
