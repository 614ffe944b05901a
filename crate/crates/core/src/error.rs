use alloc::string::String;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// The adaptive integrator needed a step smaller than the resolution of `t`.
    #[error("step size underflow at t = {t:e} (h = {h:e}); right-hand side is stiff or singular")]
    StepUnderflow { t: f64, h: f64 },

    #[error("integrator exceeded {max_steps} steps before reaching t = {t_end:e}")]
    TooManySteps { max_steps: usize, t_end: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    /// Quadrature stopped at the subdivision limit; `estimate` is the best value found.
    #[error("quadrature did not converge after {subdivisions} subdivisions: estimate {estimate:e}, error {error:e}")]
    QuadratureNotConverged {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// No sign change of the first derivative in the search interval.
    #[error("no stationary point bracketed in [{lo:e}, {hi:e}]; derivative sign pattern: {pattern}")]
    NoBracket { lo: f64, hi: f64, pattern: String },

    #[error("unstable lattice at k = {k}: eigenvalue {eigenvalue:e} of W/M is negative")]
    UnstableLattice { k: String, eigenvalue: f64 },

    #[error("lattice gas with {sites} sites exceeds the enumeration limit of {limit}")]
    Capacity { sites: usize, limit: usize },

    /// `exp(2 b aleph)` overflowed; `log_magnitude` is the natural log of the term.
    #[error("action term overflows f64: ln|term| = {log_magnitude:e}")]
    ActionOverflow { log_magnitude: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
