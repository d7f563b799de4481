//! Error type shared by all modules.

/// Errors raised by construction, analysis, and recovery routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The modulus is not a prime of the form `4z + 3` with `z >= 1`.
    #[error("{0} is not a valid modulus (prime, congruent to 3 mod 4, >= 7)")]
    InvalidModulus(u64),

    /// Two integers required to be coprime share a factor.
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },

    /// A scalar or index argument is outside its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Vector/matrix shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The operation requires unit-norm columns but the matrix is raw.
    #[error("matrix must be in unit-column state")]
    NotUnitColumns,

    /// Column normalization hit an (exactly) zero column.
    #[error("column {0} has zero norm")]
    ZeroColumn(usize),

    /// The matrix handed to the Hermitian eigensolver is not Hermitian.
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,

    /// The cyclic Jacobi sweep cap was reached before convergence.
    #[error("eigenvalue iteration did not converge within {0} sweeps")]
    EigenNonConvergence(usize),

    /// A selected column set is numerically rank deficient.
    #[error("rank-deficient system (condition estimate above {0:.1e})")]
    RankDeficient(f64),

    /// The exhaustive-search oracle would exceed its combinatorial budget.
    #[error("search space of {actual} supports exceeds the budget of {budget}")]
    BudgetExceeded { actual: u128, budget: u128 },

    /// File I/O or parsing failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
