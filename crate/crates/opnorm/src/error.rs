//! Error type shared by every module of the crate.

/// Everything that can go wrong when constructing inputs, classifying a
/// matrix, solving a scalar equation, or certifying an exact value.
#[derive(Debug, Clone, thiserror::Error)]
pub enum NormError {
    /// Dimension disagreement between operands (matrix/vector/permutation).
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Exponent outside `[1, inf]` or otherwise malformed at construction.
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    /// Exponent valid in general but outside the range an operation supports.
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),

    /// The matrix does not belong to the requested certified class.
    #[error("not in class: {0}")]
    NotInClass(String),

    /// An operation-specific precondition was violated.
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// A class constructor produced a non-finite or inadmissible entry.
    #[error("construction failed: {0}")]
    ConstructionError(String),

    /// Bracket search exhausted without a sign change.
    #[error("no bracketing root: {0}")]
    NoRoot(String),

    /// Non-finite value encountered during iteration.
    #[error("numerical failure: {0}")]
    NumericalError(String),

    /// Shear coefficient is zero; the norm is 1 and no root equation applies.
    #[error("degenerate shear: gamma = 0, the matrix is the identity")]
    DegenerateShear,

    /// The diagonal scaling built from a first-row entry of zero is singular.
    #[error("singular scaling: {0}")]
    SingularScaling(String),

    /// A factor required to be invertible is not.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// Dimension outside the range an operation supports.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// A formula value disagreed with what its own maximizer achieves.
    ///
    /// Every exact operation re-evaluates `||A x*||_r` before returning, so a
    /// wrong formula (or an inadmissible instance) surfaces here instead of
    /// being reported silently.
    #[error("certificate mismatch: formula value {expected}, maximizer achieves {achieved}")]
    CertificateMismatch { expected: f64, achieved: f64 },

    /// Malformed user-supplied data (entries, parameters, files).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, NormError>;
