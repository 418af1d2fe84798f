use thiserror::Error;

/// Errors produced by parameter validation, spectral evaluation and the
/// Monte Carlo harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor argument fell outside its admissible range.
    #[error("parameter `{field}` = {value} out of range (requires {requirement})")]
    Range {
        field: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// Pump power at/below threshold or inside the linearization margin.
    #[error("sigma = {sigma} rejected: the linearized model requires sigma >= 1 + {margin}")]
    Threshold { sigma: f64, margin: f64 },

    /// Output spectra are singular at omega <= 0 (undamped phase-difference mode).
    #[error("analysis frequency omega = {omega} rejected: spectra are defined for omega > 0 only")]
    SingularFrequency { omega: f64 },

    /// Resolvent inversion hit a pivot below the conditioning floor.
    #[error("matrix inversion failed: pivot magnitude {pivot:.3e} below conditioning floor")]
    IllConditioned { pivot: f64 },

    /// Variance of the optimization direction is too small to minimize over.
    #[error("degenerate optimization direction: variance {variance:.3e} <= 1e-12")]
    DegenerateDirection { variance: f64 },

    /// A quantity left its mathematical domain (e.g. non-positive eigenvalue).
    #[error("domain error: {0}")]
    Domain(String),

    /// Simulation configuration rejected (step size, segmentation, ...).
    #[error("simulation config error: {0}")]
    Config(String),

    /// Time series too short, or frequency outside the resolvable band.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
