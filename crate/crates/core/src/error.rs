//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// Input outside a function's mathematical domain (e.g. Gamma at x <= 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition was violated (lengths, index ranges, sign constraints).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Evaluation at a singular point (x = 0 for the potential, roots of A_n for the ODE).
    #[error("singularity: {0}")]
    Singularity(String),

    /// Working precision was exhausted; `required_digits` is a rough estimate of what would suffice.
    #[error(
        "precision exhausted at n = {n}: {detail} (estimated required digits: {required_digits})"
    )]
    Precision {
        n: usize,
        detail: String,
        required_digits: u32,
    },

    /// A quadrature or series failed to certify the requested accuracy.
    #[error(
        "accuracy target not reached: achieved relative error ~{achieved}, requested {requested}"
    )]
    Accuracy { achieved: String, requested: String },

    /// Forward string recursion hit a vanishing pivot or produced a non-positive gamma.
    #[error("string recursion unstable at n = {n}: {detail}")]
    Instability { n: usize, detail: String },

    /// Invalid run configuration (unknown check name, bad flag combination).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
