//! Operating parameters, above-threshold mean-field steady state, and the
//! linearized drift/noise model of the intracavity quadrature fluctuations.
//!
//! Mean fields at exact triple resonance (all phases absorbed so that the
//! mean amplitudes are real and positive, time in units of the round-trip
//! time tau):
//!
//! ```text
//! d a0/dt = -gamma0 a0 - chi a1 a2 + drive
//! d a1/dt = -gamma  a1 + chi a0 a2
//! d a2/dt = -gamma  a2 + chi a0 a1
//! ```
//!
//! Above threshold the pump clamps at `a0 = gamma/chi` and the twins share a
//! common amplitude `beta` with `chi^2 beta^2 = gamma0 gamma (sqrt(sigma)-1)`,
//! where `sigma` is pump power relative to threshold. Linearizing around this
//! point and passing to the sum/difference twin basis decouples the six
//! quadrature equations into a 4x4 block `(p0, q0, p+, q+)` and two scalar
//! channels `p-`, `q-`:
//!
//! ```text
//! dp0/dt = -gamma0 p0 - d p+        dq0/dt = -gamma0 q0 - d q+
//! dp+/dt = +d p0                    dq+/dt = -2 gamma q+ + d q0
//! dp-/dt = -2 gamma p-              dq-/dt = 0
//! ```
//!
//! with the effective coupling `d = sqrt(2 gamma0 gamma (sqrt(sigma)-1))`.
//! The undamped `q-` channel is the free phase-difference mode; every other
//! eigenvalue of the drift has a strictly negative real part.

use crate::basis::{self, plus_minus_rotation, DIM};
use crate::error::{Error, Result};
use crate::linalg::{matmul, transpose, zeros, Mat};
use crate::scalar::{as_f64, cast, Real};

/// Reject `sigma` closer to threshold than this: the linearization breaks
/// down in the immediate vicinity of threshold.
pub const THRESHOLD_MARGIN: f64 = 1e-3;

/// Physical and operating parameters of the triply resonant OPO.
///
/// Transmittances and losses are per-round-trip intensity fractions; the
/// derived amplitude decay rates are `gamma_c = t/2`, `gamma_l = mu/2` and
/// `gamma = gamma_c + gamma_l` (same pattern for the pump with `t0`, `mu0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpoParams<T> {
    /// Pump coupling-mirror intensity transmittance, 0 < t0 < 1.
    pub t0: T,
    /// Signal/idler coupling-mirror intensity transmittance, 0 < t < 1.
    pub t: T,
    /// Pump spurious intracavity intensity loss, >= 0.
    pub mu0: T,
    /// Signal/idler spurious intracavity intensity loss, >= 0.
    pub mu: T,
    /// Pump power relative to the oscillation threshold, > 1.
    pub sigma: T,
    /// Nonlinear coupling constant. Bookkeeping only: every fluctuation
    /// observable is independent of `chi` at fixed (t0, t, mu0, mu, sigma).
    pub chi: T,
    /// Cavity round-trip time. Only labels the frequency axis; internally
    /// all rates and frequencies are expressed in units of 1/tau.
    pub tau: T,
}

impl<T: Real> OpoParams<T> {
    /// Validate and build a parameter set (tau = 1).
    pub fn new(t0: T, t: T, mu0: T, mu: T, sigma: T, chi: T) -> Result<Self> {
        let check_open_unit = |field: &'static str, v: T| -> Result<()> {
            if v > T::zero() && v < T::one() {
                Ok(())
            } else {
                Err(Error::Range {
                    field,
                    value: as_f64(v),
                    requirement: "0 < value < 1",
                })
            }
        };
        check_open_unit("t0", t0)?;
        check_open_unit("t", t)?;
        for (field, v) in [("mu0", mu0), ("mu", mu)] {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(Error::Range {
                    field,
                    value: as_f64(v),
                    requirement: "value >= 0",
                });
            }
        }
        if !(chi > T::zero() && chi.is_finite()) {
            return Err(Error::Range {
                field: "chi",
                value: as_f64(chi),
                requirement: "value > 0",
            });
        }
        if !(sigma.is_finite() && sigma >= T::one() + cast(THRESHOLD_MARGIN)) {
            return Err(Error::Threshold {
                sigma: as_f64(sigma),
                margin: THRESHOLD_MARGIN,
            });
        }
        Ok(Self {
            t0,
            t,
            mu0,
            mu,
            sigma,
            chi,
            tau: T::one(),
        })
    }

    /// Pump coupling-mirror amplitude decay rate, t0/2.
    pub fn gamma_c0(&self) -> T {
        self.t0 / cast(2.0)
    }

    /// Pump spurious-loss amplitude decay rate, mu0/2.
    pub fn gamma_l0(&self) -> T {
        self.mu0 / cast(2.0)
    }

    /// Total pump amplitude decay rate.
    pub fn gamma0(&self) -> T {
        self.gamma_c0() + self.gamma_l0()
    }

    /// Twin coupling-mirror amplitude decay rate, t/2.
    pub fn gamma_c(&self) -> T {
        self.t / cast(2.0)
    }

    /// Twin spurious-loss amplitude decay rate, mu/2.
    pub fn gamma_l(&self) -> T {
        self.mu / cast(2.0)
    }

    /// Total twin amplitude decay rate.
    pub fn gamma(&self) -> T {
        self.gamma_c() + self.gamma_l()
    }

    /// Above-threshold mean-field solution.
    pub fn steady_state(&self) -> SteadyState<T> {
        let g0 = self.gamma0();
        let g = self.gamma();
        let excess = self.sigma.sqrt() - T::one();
        SteadyState {
            pump_amp: g / self.chi,
            twin_amp: (g0 * g * excess).sqrt() / self.chi,
            d: (cast::<T>(2.0) * g0 * g * excess).sqrt(),
        }
    }

    /// Linearized drift and noise-coupling matrices.
    pub fn drift_model(&self) -> DriftModel<T> {
        DriftModel::new(self)
    }
}

/// Above-threshold mean-field solution (real positive phase convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState<T> {
    /// Clamped intracavity pump amplitude, gamma/chi; independent of sigma.
    pub pump_amp: T,
    /// Common intracavity signal/idler amplitude, -> 0 as sigma -> 1+.
    pub twin_amp: T,
    /// Effective parametric coupling of the fluctuation dynamics,
    /// d = sqrt(2 gamma0 gamma (sqrt(sigma) - 1)).
    pub d: T,
}

/// Drift and noise-coupling matrices of the intracavity quadrature
/// fluctuations, in the sum/difference ordering `(p0, q0, p+, q+, p-, q-)`.
///
/// The Langevin system is `dx = a x dt + b_c dW_c + b_v dW_v` with
/// independent unit-intensity Wiener inputs per channel, and the output
/// fields on the coupling mirror are `x_out = c_out x - x_in,c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftModel<T> {
    /// Drift matrix; block diagonal (4x4 on `(p0, q0, p+, q+)`, diagonal on
    /// `(p-, q-)`) for equal twin losses.
    pub a: Mat<T, DIM>,
    /// Coupling-mirror input rates, diag(sqrt(2 gamma_c0) x2, sqrt(2 gamma_c) x4).
    pub b_c: Mat<T, DIM>,
    /// Spurious-loss vacuum input rates, diag(sqrt(2 gamma_l0) x2, sqrt(2 gamma_l) x4).
    pub b_v: Mat<T, DIM>,
    /// Output coupling on the mirror; identical to `b_c`.
    pub c_out: Mat<T, DIM>,
}

impl<T: Real> DriftModel<T> {
    pub fn new(params: &OpoParams<T>) -> Self {
        let g0 = params.gamma0();
        let g = params.gamma();
        let d = params.steady_state().d;
        let two = cast::<T>(2.0);

        let mut a = zeros::<T, DIM>();
        a[basis::P0][basis::P0] = -g0;
        a[basis::P0][basis::P_PLUS] = -d;
        a[basis::Q0][basis::Q0] = -g0;
        a[basis::Q0][basis::Q_PLUS] = -d;
        a[basis::P_PLUS][basis::P0] = d;
        a[basis::Q_PLUS][basis::Q0] = d;
        a[basis::Q_PLUS][basis::Q_PLUS] = -two * g;
        a[basis::P_MINUS][basis::P_MINUS] = -two * g;
        // q- row stays zero: free phase-difference mode.

        let b_c = input_rates(params.gamma_c0(), params.gamma_c(), params.gamma_c());
        let b_v = input_rates(params.gamma_l0(), params.gamma_l(), params.gamma_l());

        DriftModel {
            a,
            b_c,
            b_v,
            c_out: b_c,
        }
    }

    /// Copy with the parametric coupling `d` scaled by `factor`.
    ///
    /// Validation hook: a deliberately corrupted drift lets the Monte Carlo
    /// harness demonstrate that it detects model mismatch.
    pub fn with_coupling_scaled(&self, factor: T) -> Self {
        let mut out = *self;
        out.a[basis::P0][basis::P_PLUS] = self.a[basis::P0][basis::P_PLUS] * factor;
        out.a[basis::Q0][basis::Q_PLUS] = self.a[basis::Q0][basis::Q_PLUS] * factor;
        out.a[basis::P_PLUS][basis::P0] = self.a[basis::P_PLUS][basis::P0] * factor;
        out.a[basis::Q_PLUS][basis::Q0] = self.a[basis::Q_PLUS][basis::Q0] * factor;
        out
    }

    /// Model with unequal spurious losses on signal (`mu1`) and idler (`mu2`);
    /// `params.mu` is ignored. The sum/difference decoupling no longer holds,
    /// so the drift is assembled in the physical basis and rotated.
    ///
    /// Validation hook: breaking the twin symmetry must break the S2 = S3
    /// degeneracy of the witness criteria.
    pub fn with_unequal_twin_losses(params: &OpoParams<T>, mu1: T, mu2: T) -> Result<Self> {
        for (field, v) in [("mu1", mu1), ("mu2", mu2)] {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(Error::Range {
                    field,
                    value: as_f64(v),
                    requirement: "value >= 0",
                });
            }
        }
        let two = cast::<T>(2.0);
        let g0 = params.gamma0();
        let gc = params.gamma_c();
        let g1 = gc + mu1 / two;
        let g2 = gc + mu2 / two;
        let excess = params.sigma.sqrt() - T::one();
        // Mean fields: chi a0 = sqrt(g1 g2), chi b1 = sqrt(g0 g2 excess),
        // chi b2 = sqrt(g0 g1 excess).
        let g = (g1 * g2).sqrt();
        let cb1 = (g0 * g2 * excess).sqrt();
        let cb2 = (g0 * g1 * excess).sqrt();

        let mut ap = zeros::<T, DIM>();
        ap[basis::P0][basis::P0] = -g0;
        ap[basis::P0][basis::P1] = -cb2;
        ap[basis::P0][basis::P2] = -cb1;
        ap[basis::P1][basis::P1] = -g1;
        ap[basis::P1][basis::P2] = g;
        ap[basis::P1][basis::P0] = cb2;
        ap[basis::P2][basis::P2] = -g2;
        ap[basis::P2][basis::P1] = g;
        ap[basis::P2][basis::P0] = cb1;
        ap[basis::Q0][basis::Q0] = -g0;
        ap[basis::Q0][basis::Q1] = -cb2;
        ap[basis::Q0][basis::Q2] = -cb1;
        ap[basis::Q1][basis::Q1] = -g1;
        ap[basis::Q1][basis::Q2] = -g;
        ap[basis::Q1][basis::Q0] = cb2;
        ap[basis::Q2][basis::Q2] = -g2;
        ap[basis::Q2][basis::Q1] = -g;
        ap[basis::Q2][basis::Q0] = cb1;

        let mut bv_phys = zeros::<T, DIM>();
        let l0 = (two * params.gamma_l0()).sqrt();
        bv_phys[basis::P0][basis::P0] = l0;
        bv_phys[basis::Q0][basis::Q0] = l0;
        bv_phys[basis::P1][basis::P1] = mu1.sqrt();
        bv_phys[basis::Q1][basis::Q1] = mu1.sqrt();
        bv_phys[basis::P2][basis::P2] = mu2.sqrt();
        bv_phys[basis::Q2][basis::Q2] = mu2.sqrt();

        let r = plus_minus_rotation::<T>();
        let rt = transpose(&r);
        let a = matmul(&rt, &matmul(&ap, &r));
        let b_v = matmul(&rt, &matmul(&bv_phys, &r));
        let b_c = input_rates(params.gamma_c0(), gc, gc);

        Ok(DriftModel {
            a,
            b_c,
            b_v,
            c_out: b_c,
        })
    }
}

fn input_rates<T: Real>(pump: T, twin1: T, twin2: T) -> Mat<T, DIM> {
    let two = cast::<T>(2.0);
    let mut m = zeros::<T, DIM>();
    let rp = (two * pump).sqrt();
    let r1 = (two * twin1).sqrt();
    let r2 = (two * twin2).sqrt();
    m[basis::P0][basis::P0] = rp;
    m[basis::Q0][basis::Q0] = rp;
    m[basis::P_PLUS][basis::P_PLUS] = r1;
    m[basis::Q_PLUS][basis::Q_PLUS] = r1;
    m[basis::P_MINUS][basis::P_MINUS] = r2;
    m[basis::Q_MINUS][basis::Q_MINUS] = r2;
    m
}
