use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QslError {
    #[error("invalid dimension {0}: at least 2 is required")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0} instead of 1")]
    InvalidTrace(f64),

    #[error("not a state: minimum eigenvalue {0:e}")]
    NotAState(f64),

    #[error("Bloch angle undefined: generalized Bloch vector has norm {0:e}")]
    UndefinedAngle(f64),

    #[error("parameter `{name}` = {value} outside {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("integration failed at step {step}: {reason}")]
    IntegrationFailure { step: usize, reason: String },

    #[error("orbit too short: {0} states (need at least 2)")]
    OrbitTooShort(usize),

    #[error("target unreachable: zero speed with distance {0:e}")]
    UnreachableTarget(f64),

    #[error("bound {name} = {value} exceeds evolution time {tau}")]
    BoundViolation { name: String, value: f64, tau: f64 },

    #[error("jump operators violate the orthonormal traceless convention: {0}")]
    ChannelConvention(String),

    #[error("state is not stationary under the generator (|rhs| = {0:e})")]
    NotStationary(f64),
}

pub type Result<T, E = QslError> = std::result::Result<T, E>;
