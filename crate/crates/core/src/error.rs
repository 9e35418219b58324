use thiserror::Error;

/// Errors raised by the ring, the parser and the two engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative hbar valuation survives the hbar -> 0 limit: {residual}")]
    NegativeHbarValuation { residual: String },

    #[error("negative z valuation survives the z expansion: {residual}")]
    NegativeZValuation { residual: String },

    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("exponential argument is not z times a linear form: {0}")]
    NonLinearExpArgument(String),

    #[error("incomplete {table} table: missing entry for {entry}")]
    IncompleteTable { table: String, entry: String },

    #[error("invalid definition: {0}")]
    InvalidSpec(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("image of exponential-capable generator `{0}` is not a linear form")]
    NonLinearEImage(String),

    #[error("leg mismatch: {left} legs vs {right} legs")]
    LegMismatch { left: usize, right: usize },

    #[error("normal ordering ran out of fuel after {applied} rule applications; pending term: {term}")]
    FuelExhausted { applied: u64, term: String },

    #[error("expression cannot be represented in the coefficient ring: {0}")]
    Unrepresentable(String),

    #[error("operation requires a {expected} algebra")]
    WrongMode { expected: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
