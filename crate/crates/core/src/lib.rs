//! Quantum-noise model of the triply resonant optical parametric oscillator
//! running above threshold.
//!
//! The crate computes the 6x6 spectral covariance matrix of the pump, signal
//! and idler output quadratures from the linearized intracavity Langevin
//! equations and the input-output relation, and derives from it:
//!
//! * the three sum-of-variance separability criteria S1, S2, S3 with
//!   analytically optimized free parameters ([`witness`]);
//! * logarithmic-negativity quantities from the covariance eigenvalues,
//!   including the pump-traced reduction and their difference
//!   ([`negativity`]);
//! * an independent time-domain Monte Carlo estimate of the same spectra
//!   for validation ([`sde`]).
//!
//! Everything is generic over the floating-point scalar (see [`scalar::Real`]);
//! the `*64`/`*32` aliases at the crate root pick a concrete width.
//!
//! Conventions: vacuum variance 1 per quadrature, `[p, q] = 2i`, time and
//! frequency in units of the cavity round-trip time (`tau = 1`).

pub mod basis;
pub mod error;
pub mod linalg;
pub mod model;
pub mod negativity;
mod scalar;
pub mod sde;
pub mod spectra;
pub mod witness;

pub use basis::Mode;
pub use error::{Error, Result};
pub use model::{DriftModel, OpoParams, SteadyState, THRESHOLD_MARGIN};
pub use negativity::{
    en_diff, log_negativity, negativity_from, ppt_symplectic_check, smallest_two, NegativityResult,
};
pub use scalar::Real;
pub use sde::{estimate_spectrum, simulate, simulate_drift, OutputSeries, SimConfig, SpectrumEstimate};
pub use spectra::{output_spectrum, output_spectrum_of, SpectralMatrix};
pub use witness::{evaluate_criteria, optimal_alpha, vf_bound, WitnessCombination, WitnessResult};

pub type OpoParams64 = model::OpoParams<f64>;
pub type SteadyState64 = model::SteadyState<f64>;
pub type DriftModel64 = model::DriftModel<f64>;
pub type SpectralMatrix64 = spectra::SpectralMatrix<f64>;
pub type WitnessResult64 = witness::WitnessResult<f64>;
pub type NegativityResult64 = negativity::NegativityResult<f64>;
pub type SimConfig64 = sde::SimConfig<f64>;

pub type OpoParams32 = model::OpoParams<f32>;
pub type SteadyState32 = model::SteadyState<f32>;
pub type DriftModel32 = model::DriftModel<f32>;
pub type SpectralMatrix32 = spectra::SpectralMatrix<f32>;
pub type WitnessResult32 = witness::WitnessResult<f32>;
pub type NegativityResult32 = negativity::NegativityResult<f32>;
pub type SimConfig32 = sde::SimConfig<f32>;
