use thiserror::Error;

/// Errors raised by graph construction, exact spectral computation and
/// certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("infeasible SRG parameters: {0}")]
    InfeasibleParameters(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("not strongly regular: {reason}")]
    NotSrg {
        reason: String,
        /// A vertex pair where the defining identity fails, when one exists.
        witness: Option<(usize, usize)>,
    },

    #[error("malformed graph6 encoding at byte {offset}: {reason}")]
    MalformedEncoding { offset: usize, reason: String },

    #[error("eigenvalues are irrational (conference parameters)")]
    IrrationalEigenvalues,

    #[error("degenerate multiplicities m_theta = {m_theta}, m_tau = {m_tau} (both must be at least 2)")]
    DegenerateMultiplicity { m_theta: u64, m_tau: u64 },

    #[error("trivial perturbation: beta = gamma = 0")]
    TrivialPerturbation,

    #[error("graph is not 1-walk-regular (fails at walk length {length})")]
    NotOneWalkRegular { length: usize },

    #[error("vertices {u} and {v} are not cospectral")]
    NotCospectral { u: usize, v: usize },

    #[error("2-adic valuation of zero is undefined")]
    ZeroInput,

    #[error("inexact spectrum: {0}")]
    InexactSpectrum(String),

    #[error("{0} is not a prime power")]
    InvalidPrimePower(u64),

    #[error("unsupported polynomial degree {0} (expected 2 or 3)")]
    UnsupportedDegree(usize),

    #[error("ill-conditioned eigenspace: residual {residual:e} exceeds tolerance {tolerance:e}")]
    IllConditioned { residual: f64, tolerance: f64 },

    #[error("invalid vertex pair: {0}")]
    InvalidPair(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
