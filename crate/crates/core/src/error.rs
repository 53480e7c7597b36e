use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised by the physics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A lossless model evaluated exactly on one of its poles.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("material `{0}` has neither burst_speed_m_s nor both density_kg_m3 and uts_pa")]
    MissingMechanicalData(String),

    #[error(
        "lossless resonance crossing: gamma = 0 and omega_rot = {omega_rot:e} rad/s exceeds \
         omega_T = {omega_t:e} rad/s; the emission integral diverges"
    )]
    LosslessResonanceCrossing { omega_rot: f64, omega_t: f64 },

    #[error(
        "quadrature did not converge after {panels} panels: partial value {value:e}, \
         error estimate {abs_error:e}"
    )]
    NonConvergence {
        value: f64,
        abs_error: f64,
        panels: usize,
    },

    #[error("vacuum normalization calibration failed: {0}")]
    CalibrationFailure(String),

    #[error("correlation matrix is not Hermitian (relative defect {0:e})")]
    NonHermitian(f64),

    #[error("asymptote fit failed: {0}")]
    FitFailure(String),

    #[error("degenerate objective: {0}")]
    DegenerateObjective(String),
}
