use thiserror::Error;

/// Errors raised by the library. Conjecture-exploration tools never use these
/// to signal a mathematical negative; they return reports instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("a = {a} and b = {b} are not coprime")]
    NotCoprime { a: usize, b: usize },

    #[error("partition {parts:?} is not a {modulus}-core")]
    NotACore { parts: Vec<u64>, modulus: usize },

    #[error("point is not a lattice point of the simplex of ({a},{b})-cores")]
    NotInSimplex { a: usize, b: usize },

    #[error("{what} needs {count} items, above the configured cap of {cap}")]
    CapExceeded {
        what: String,
        count: String,
        cap: u64,
    },

    #[error("exact division left a nonzero remainder: {0}")]
    InexactDivision(String),

    #[error("fit validation failed in residue class {residue} at t = {t}: sample {expected}, fitted {fitted}")]
    ValidationFailed {
        residue: i64,
        t: i64,
        expected: String,
        fitted: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
