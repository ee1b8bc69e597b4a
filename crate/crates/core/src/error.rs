use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a valid qubit state: {0}")]
    NotAState(String),
    #[error("degenerate Hamiltonian: field magnitude {0:e} is below tolerance")]
    DegenerateHamiltonian(f64),
    #[error("purity {0:e} is too small for entropy-based quantities")]
    PurityZero(f64),
    #[error("undefined limit: {0}")]
    UndefinedLimit(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("quadrature failed to reach tolerance {tol:e} (estimated error {err:e}) within {subdivisions} subdivisions")]
    QuadratureFailure { tol: f64, err: f64, subdivisions: usize },
    #[error("integrator needs more than {budget} substeps per grid interval near t = {t}")]
    StepSizeUnderflow { t: f64, budget: usize },
    #[error("monotonicity direction undefined: {0}")]
    SignAmbiguous(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    /// True for failures of a numerical procedure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. } | Error::StepSizeUnderflow { .. }
        )
    }
}
