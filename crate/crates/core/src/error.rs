use thiserror::Error;

/// Errors surfaced by the core operations.
///
/// Infeasibility of a linear system is not an error (see
/// [`crate::linalg::SolveOutcome`]); these variants cover violated
/// preconditions and invalid constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "matrix entries and shape disagree: {rows} x {cols} needs {expected} entries, got {got}"
    )]
    BadShape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("vector is not in the kernel of the matrix")]
    NotInKernel,

    #[error("kernel vector must be nonzero")]
    ZeroKernelVector,

    #[error("parameters must be strictly positive")]
    NonPositiveParameter,

    #[error("exact parametrization requires an integer matrix (entry at row {row}, column {col} is not an integer)")]
    NonIntegerMatrix { row: usize, col: usize },

    #[error("reference measure must be strictly positive everywhere")]
    NonPositiveMeasure,

    #[error("not a probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("alpha must avoid 0 and 1")]
    InvalidAlpha,

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("subset index {index} out of range for ground set of size {ground}")]
    IndexOutOfRange { index: usize, ground: usize },

    #[error("set {0:?} is not facial")]
    NotFacial(Vec<usize>),

    #[error("log-probability system is inconsistent; the target violates the implicit equations")]
    LogSystemInconsistent,

    #[error("operation requires full support, but state {0} has probability zero")]
    MissingSupport(usize),

    #[error("value is not finite")]
    NonFiniteValue,
}
