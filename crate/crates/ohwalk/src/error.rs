use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// An exhaustive enumeration was requested above the configured limit.
    #[error("enumeration guard exceeded: n = {n} but limit is {limit} (4^n vertices); raise the guard explicitly to proceed")]
    GuardExceeded { n: usize, limit: usize },

    /// A shape `(e1, e2)` with `e1 + e2 > N`.
    #[error("invalid shape ({e1},{e2}) for n = {n}: e1 + e2 must not exceed n")]
    InvalidShape { e1: usize, e2: usize, n: usize },

    /// A lattice or spectral point outside the triangle `i + j <= N`.
    #[error("invalid site ({i},{j}) for n = {n}: i + j must not exceed n")]
    InvalidSite { i: usize, j: usize, n: usize },

    /// Polynomial parameters outside the admissible region.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A coupling ratio that cannot be classified.
    #[error("invalid ratio: {0}")]
    InvalidRatio(String),

    /// A numerical result left the finite range.
    #[error("non-finite value in {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
