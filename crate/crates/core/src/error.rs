use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;

/// Failure modes shared across the crate.
///
/// `Parameter` covers precondition violations detectable from arguments
/// alone; the remaining variants are raised while computing.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("non-finite value at node {at}")]
    Evaluation { at: Complex64 },

    #[error("evaluation point {at} hits a singularity: {what}")]
    Singularity { at: Complex64, what: String },

    #[error("outside the convergence region: {0}")]
    ConvergenceRegion(String),

    #[error("closed form not valid here: {0}")]
    Domain(String),

    #[error("accuracy check failed, residual {residual:.3e}: {what}")]
    Accuracy { residual: f64, what: String },

    #[error("boundary data inconsistent with trajectory, residual {residual:.3e}")]
    ContractMismatch { residual: f64 },

    #[error("root search did not converge after {iterations} iterations, residual {residual:.3e}")]
    RootNotFound { iterations: usize, residual: f64 },

    #[error("degenerate saddle: the Laplace transform must be done exactly (exponent linear in the integration variable)")]
    DegenerateSaddle {
        /// Exact value when the Hamiltonian admits one (harmonic oscillator).
        exact_fallback: Option<Complex64>,
    },

    #[error("trajectory blew up at t = {t:.6}")]
    BlowUp { t: f64 },

    #[error("stability matrix element vanished (|entry| = {magnitude:.3e}), the saddle-point prefactor diverges")]
    FocalPoint { magnitude: f64 },

    #[error("derivative self-test failed: {0}")]
    SelfTest(String),
}
