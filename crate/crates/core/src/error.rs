use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input violates a structural invariant of the object being built.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A brute-force path was asked to handle more than its configured budget.
    #[error("{what} exceeds budget: {actual} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("polynomial is not monic")]
    NotMonic,

    /// Two independent computations of the same quantity disagreed.
    #[error("internal disagreement: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn check_budget(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::BudgetExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
