use crate::response::StabilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("mean fields are singular at zero detuning")]
    SingularDetuning,

    #[error("singular response at omega = {omega}: {what}")]
    Singular { omega: f64, what: &'static str },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e}, bound {bound:e})")]
    RootFinder {
        iterations: usize,
        residual: f64,
        bound: f64,
    },

    #[error("system is dynamically unstable (margin {:e})", .0.margin)]
    Unstable(StabilityReport),

    #[error("step size {dt:e} exceeds the limit {limit:e}")]
    StepSize { dt: f64, limit: f64 },

    #[error("horizon {horizon} is shorter than the required {required}")]
    Horizon { horizon: f64, required: f64 },

    #[error("probe window: {0}")]
    ProbeWindow(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
}
