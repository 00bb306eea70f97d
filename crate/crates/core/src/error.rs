use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {got} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },

    #[error("matrix is not Hermitian (max |M - M^H| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("state vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("invalid subsystem layout: {0}")]
    InvalidSubsystems(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("decay rate is singular at t = {t}: |G(t)| = {g_abs:e}")]
    SingularDecayRate { t: f64, g_abs: f64 },

    #[error("near-purity singularity at t = {t}: 1 - Tr(rho_t^2) = {linear_entropy:e}, |Tr(rho_dot rho_t)| = {overlap_rate:e}")]
    PuritySingularity {
        t: f64,
        linear_entropy: f64,
        overlap_rate: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent bound: X_tau = 0 while 1 - F_tau = {0:e}")]
    InconsistentBound(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
