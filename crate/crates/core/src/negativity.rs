//! Eigenvalue analysis of the measurable covariance matrix and the
//! logarithmic-negativity quantities built from it.
//!
//! `E_N = max[0, -log2(l1 l2) / 2]` from the two smallest eigenvalues of
//! `re(S)`, evaluated both for the full three-mode matrix and for the
//! signal/idler 4x4 principal submatrix (pump traced out). Their difference
//! `E_N^diff` measures how much entanglement is lost when the pump is
//! ignored. A standard check based on partial transposition and symplectic
//! eigenvalues is provided alongside; it is a labeled cross-check and never
//! feeds `E_N^diff`.

use crate::basis::{symplectic_form, Mode, DIM};
use crate::error::{Error, Result};
use crate::linalg::{matmul, sym_eigen, sym_sqrt, transpose, Mat};
use crate::model::OpoParams;
use crate::scalar::{as_f64, cast, Real};
use crate::spectra::{output_spectrum, SpectralMatrix};

/// Eigenvalue/negativity summary of one spectral covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult<T> {
    /// Ascending eigenvalues of the full 6x6 re(S).
    pub eigvals_full: [T; 6],
    /// Ascending eigenvalues of the signal/idler 4x4 submatrix.
    pub eigvals_reduced: [T; 4],
    pub en_full: T,
    pub en_reduced: T,
    /// `en_full - en_reduced`.
    pub en_diff: T,
    /// Coefficient of q0 in the second eigenvector when it has the phase-sum
    /// form `(q1 + q2 - beta q0)`; `None` when the eigenvector has measurable
    /// amplitude-quadrature content and the pattern does not apply.
    pub beta: Option<T>,
}

/// Two smallest eigenvalues of a real symmetric matrix, `l1 <= l2`.
pub fn smallest_two<T: Real, const N: usize>(m: &Mat<T, N>) -> (T, T) {
    let (vals, _) = sym_eigen(m);
    (vals[0], vals[1])
}

/// `max[0, -log2(l1 l2) / 2]`; both eigenvalues must be positive.
pub fn log_negativity<T: Real>(l1: T, l2: T) -> Result<T> {
    if !(l1 > T::zero() && l2 > T::zero()) {
        return Err(Error::Domain(format!(
            "log-negativity needs positive eigenvalues, got ({}, {})",
            as_f64(l1),
            as_f64(l2)
        )));
    }
    Ok((-(l1 * l2).log2() / cast(2.0)).max(T::zero()))
}

/// Eigenvalue analysis of an already computed spectral matrix.
pub fn negativity_from<T: Real>(sm: &SpectralMatrix<T>) -> Result<NegativityResult<T>> {
    let sig = sm.re();
    let (eigvals_full, vecs) = sym_eigen(&sig);

    let mut reduced = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            reduced[i][j] = sig[i + 2][j + 2];
        }
    }
    let (eigvals_reduced, _) = sym_eigen(&reduced);

    let en_full = log_negativity(eigvals_full[0], eigvals_full[1])?;
    let en_reduced = log_negativity(eigvals_reduced[0], eigvals_reduced[1])?;

    // Second eigenvector, expected shape (0, -beta, 0, 1, 0, 1)/norm.
    let v: [T; 6] = std::array::from_fn(|k| vecs[k][1]);
    let p_content = v[0].abs().max(v[2].abs()).max(v[4].abs());
    let beta = if p_content <= cast(1e-6) && v[3].abs() > cast(1e-9) {
        Some(-v[1] / v[3])
    } else {
        None
    };

    Ok(NegativityResult {
        eigvals_full,
        eigvals_reduced,
        en_full,
        en_reduced,
        en_diff: en_full - en_reduced,
        beta,
    })
}

/// Full pipeline: spectral matrix at `omega`, then eigenvalue analysis.
pub fn en_diff<T: Real>(params: &OpoParams<T>, omega: T) -> Result<NegativityResult<T>> {
    negativity_from(&output_spectrum(params, omega)?)
}

/// Standard logarithmic negativity of the bipartition `lone | rest` from the
/// partial-transpose criterion: flip the sign of the lone mode's phase
/// quadrature, then sum `-log2` of the symplectic eigenvalues below 1.
///
/// The symplectic spectrum of `sigma~` is obtained from the symmetric matrix
/// `sqrt(sigma~) Omega^T sigma~ Omega sqrt(sigma~)`, whose eigenvalues are
/// the squared symplectic eigenvalues, each twice.
pub fn ppt_symplectic_check<T: Real>(sm: &SpectralMatrix<T>, lone: Mode) -> Result<T> {
    let mut sig = sm.re();
    let (_, q_slot) = lone.slots();
    for k in 0..DIM {
        sig[q_slot][k] = -sig[q_slot][k];
        sig[k][q_slot] = -sig[k][q_slot];
    }

    let half = sym_sqrt(&sig);
    let om = symplectic_form::<T>();
    let w = matmul(
        &half,
        &matmul(&transpose(&om), &matmul(&sig, &matmul(&om, &half))),
    );
    let (vals, _) = sym_eigen(&w);

    // vals = (nu_1^2, nu_1^2, nu_2^2, ...): take one of each pair.
    let mut en = T::zero();
    for pair in 0..3 {
        let nu = vals[2 * pair].max(T::zero()).sqrt();
        if nu < cast(1e-9) {
            return Err(Error::Domain(format!(
                "singular partially transposed covariance (nu = {})",
                as_f64(nu)
            )));
        }
        if nu < T::one() {
            en -= nu.log2();
        }
    }
    Ok(en.max(T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{P1, P2, Q1, Q2};
    use crate::linalg::CMat;
    use num_complex::Complex;

    fn from_real(m: Mat<f64, 6>) -> SpectralMatrix<f64> {
        let mut s: CMat<f64, 6> = [[Complex::new(0.0, 0.0); 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                s[i][j] = Complex::new(m[i][j], 0.0);
            }
        }
        SpectralMatrix { omega: 1.0, s }
    }

    fn vacuum() -> SpectralMatrix<f64> {
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        from_real(m)
    }

    #[test]
    fn smallest_two_examples() {
        let mut id = [[0.0; 6]; 6];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        assert_eq!(smallest_two(&id), (1.0, 1.0));

        let mut d = [[0.0; 6]; 6];
        for (i, v) in [0.25, 0.5, 1.0, 2.0, 2.0, 4.0].into_iter().enumerate() {
            d[i][i] = v;
        }
        assert_eq!(smallest_two(&d), (0.25, 0.5));
    }

    #[test]
    fn log_negativity_examples() {
        assert_eq!(log_negativity(1.0, 1.0).unwrap(), 0.0);
        assert!((log_negativity(0.25f64, 0.5).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(log_negativity(2.0, 3.0).unwrap(), 0.0);
        assert!(log_negativity(0.0, 1.0).is_err());
        assert!(log_negativity(1.0, -0.5).is_err());
    }

    #[test]
    fn vacuum_has_no_negativity() {
        let n = negativity_from(&vacuum()).unwrap();
        assert_eq!(n.en_full, 0.0);
        assert_eq!(n.en_reduced, 0.0);
        assert_eq!(n.en_diff, 0.0);
        for mode in Mode::ALL {
            assert_eq!(ppt_symplectic_check(&vacuum(), mode).unwrap(), 0.0);
        }
    }

    /// Two-mode squeezed covariance on signal/idler: the PPT negativity
    /// across either twin bipartition is 2r/ln 2; the pump bipartition
    /// carries none.
    #[test]
    fn two_mode_squeezed_closed_form() {
        let r = 1.0f64;
        let ch = (2.0 * r).cosh();
        let sh = (2.0 * r).sinh();
        let mut m = [[0.0; 6]; 6];
        m[0][0] = 1.0;
        m[1][1] = 1.0;
        for k in [P1, Q1, P2, Q2] {
            m[k][k] = ch;
        }
        m[P1][P2] = sh;
        m[P2][P1] = sh;
        m[Q1][Q2] = -sh;
        m[Q2][Q1] = -sh;
        let sm = from_real(m);

        // sanity: V(p1-p2) = V(q1+q2) = 2 e^{-2r}
        let c = [0.0, 0.0, 1.0, 0.0, -1.0, 0.0];
        assert!((sm.variance(&c) - 2.0 * (-2.0 * r).exp()).abs() < 1e-12);

        let expect = 2.0 * r / std::f64::consts::LN_2;
        for lone in [Mode::Signal, Mode::Idler] {
            let en = ppt_symplectic_check(&sm, lone).unwrap();
            assert!((en - expect).abs() < 1e-9, "got {en}, want {expect}");
        }
        assert!(ppt_symplectic_check(&sm, Mode::Pump).unwrap() < 1e-9);
    }

    #[test]
    fn clamps_and_interlacing_on_a_made_up_matrix() {
        // positive definite with some cross correlations
        let mut m = [[0.0; 6]; 6];
        for (i, v) in [0.4, 1.1, 0.7, 2.0, 0.9, 3.0].into_iter().enumerate() {
            m[i][i] = v;
        }
        m[1][3] = 0.3;
        m[3][1] = 0.3;
        m[2][4] = -0.2;
        m[4][2] = -0.2;
        let n = negativity_from(&from_real(m)).unwrap();
        for w in n.eigvals_full.windows(2) {
            assert!(w[0] <= w[1]);
        }
        // Cauchy interlacing for the principal 4x4 submatrix
        for i in 0..4 {
            assert!(n.eigvals_full[i] <= n.eigvals_reduced[i] + 1e-12);
            assert!(n.eigvals_reduced[i] <= n.eigvals_full[i + 2] + 1e-12);
        }
    }
}
