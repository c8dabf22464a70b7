use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A matrix operation received incompatible or non-square dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Integer arithmetic left the representable range. Never silently wraps.
    #[error("arithmetic overflow during exact integer computation")]
    ArithmeticOverflow,

    /// The modulus is not an odd prime.
    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(u64),

    /// Text input could not be tokenized or parsed.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    /// Structured input violated a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// `catalog` was asked for a name it does not know.
    #[error("unknown catalog name: {0}")]
    UnknownCatalogName(String),

    /// The requested computation needs a nontrivial p-colouring that does not exist.
    #[error("not {p}-colourable: {reason}")]
    NotColorable { p: u64, reason: String },

    /// Two coloured objects were combined across different moduli.
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    /// An internal consistency check failed; upstream preconditions were violated.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// The reducer cannot handle this input without guessing; it refuses instead.
    #[error("unreducible input: {0}")]
    Unreducible(String),

    /// A multiset operation received no summands to work with.
    #[error("empty summand multiset: the unknot carries no nontrivial colouring")]
    EmptyMultiset,
}

pub type Result<T> = std::result::Result<T, Error>;
