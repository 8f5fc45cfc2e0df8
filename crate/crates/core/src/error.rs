use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("not a projection: {0}")]
    NotProjection(String),

    #[error("not a density matrix: {0}")]
    NotState(String),

    #[error("events are not orthogonal")]
    NotOrthogonal,

    #[error("conditioning event has probability {0:e}")]
    NullCondition(f64),

    #[error("invalid slit configuration: {0}")]
    InvalidConfiguration(String),

    #[error("observable spectrum outside [-1, 1]: {0}")]
    SpectrumOutOfRange(String),

    #[error("invalid behavior table: {0}")]
    InvalidBehavior(String),

    #[error("free algebra: {0}")]
    FreeAlgebra(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
