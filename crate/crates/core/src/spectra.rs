//! Frequency-domain output fluctuations via the input-output relation.
//!
//! At analysis frequency `omega` (in units of 1/tau) the intracavity
//! response is the resolvent `G = (-i omega I - a)^(-1)`. With the output
//! relation `x_out = c_out x - x_in,c` and unit-density vacuum on every
//! input port (the pump drive is a coherent state, so its fluctuations are
//! vacuum too), the output spectral matrix in the sum/difference basis is
//!
//! ```text
//! M = c_out G b_c - I      N = c_out G b_v      S = M M^dag + N N^dag
//! ```
//!
//! which is then rotated to the physical ordering `(p0, q0, p1, q1, p2, q2)`.
//! The computation stays in the decoupled sum/difference basis for
//! conditioning; only the public matrix is rotated. `re(S)` is the
//! measurable symmetric covariance matrix; variances of real quadrature
//! combinations depend on it alone.

use num_complex::Complex;

use crate::basis::{plus_minus_rotation, DIM};
use crate::error::{Error, Result};
use crate::linalg::{cadd, cinverse, cmatmul, csub, gram, quad_form, sandwich, to_complex, CMat, cidentity, Mat};
use crate::model::{DriftModel, OpoParams};
use crate::scalar::{as_f64, Real};

/// Hermitian 6x6 output noise spectral matrix at one analysis frequency,
/// physical quadrature ordering `(p0, q0, p1, q1, p2, q2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMatrix<T> {
    /// Analysis frequency in units of 1/tau, > 0.
    pub omega: T,
    pub s: CMat<T, DIM>,
}

/// Output spectral matrix of the OPO described by `params` at `omega`.
pub fn output_spectrum<T: Real>(params: &OpoParams<T>, omega: T) -> Result<SpectralMatrix<T>> {
    output_spectrum_of(&params.drift_model(), omega)
}

/// Output spectral matrix for an explicit drift/noise model (also serves the
/// validation hooks that modify the drift).
pub fn output_spectrum_of<T: Real>(drift: &DriftModel<T>, omega: T) -> Result<SpectralMatrix<T>> {
    if !(omega > T::zero()) {
        return Err(Error::SingularFrequency {
            omega: as_f64(omega),
        });
    }

    // -i omega I - a
    let mut shifted = [[Complex::new(T::zero(), T::zero()); DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            shifted[i][j] = Complex::new(-drift.a[i][j], T::zero());
        }
        shifted[i][i] = shifted[i][i] + Complex::new(T::zero(), -omega);
    }
    let g = cinverse(&shifted)?;

    let c_out = to_complex(&drift.c_out);
    let cg = cmatmul(&c_out, &g);
    let m = csub(&cmatmul(&cg, &to_complex(&drift.b_c)), &cidentity());
    let n = cmatmul(&cg, &to_complex(&drift.b_v));

    let s_pm = cadd(&gram(&m), &gram(&n));
    let mut s = sandwich(&plus_minus_rotation::<T>(), &s_pm);

    // Fold out rounding asymmetry from the rotation.
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            let avg = (s[i][j] + s[j][i].conj()).unscale(T::one() + T::one());
            s[i][j] = avg;
            s[j][i] = avg.conj();
        }
        s[i][i] = Complex::new(s[i][i].re, T::zero());
    }

    Ok(SpectralMatrix { omega, s })
}

impl<T: Real> SpectralMatrix<T> {
    /// Measurable symmetric covariance matrix, re(S).
    pub fn re(&self) -> Mat<T, DIM> {
        let mut out = [[T::zero(); DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                out[i][j] = self.s[i][j].re;
            }
        }
        out
    }

    /// Variance of the quadrature combination `sum_j c_j x_j` at this
    /// analysis frequency: `c^T re(S) c`.
    pub fn variance(&self, c: &[T; DIM]) -> T {
        quad_form(&self.re(), c, c)
    }

    /// Covariance of two real quadrature combinations, `u^T re(S) v`.
    pub fn covariance(&self, u: &[T; DIM], v: &[T; DIM]) -> T {
        quad_form(&self.re(), u, v)
    }

    /// Largest deviation from Hermitian symmetry (diagnostic).
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                let diff = self.s[i][j] - self.s[j][i].conj();
                worst = worst.max(diff.norm_sqr().sqrt());
            }
        }
        worst
    }
}
