//! Sum-of-variance separability criteria for the three output modes.
//!
//! For commuting combinations `u = h0 p0 + h1 p1 + h2 p2` and
//! `v = g0 q0 + g1 q1 + g2 q2`, any state separable across the bipartition
//! `n | (k, m)` satisfies
//!
//! ```text
//! <D^2 u> + <D^2 v> >= 2 (|h_n g_n| + |h_k g_k + h_m g_m|)
//! ```
//!
//! In the convention used here (vacuum variance 1, `[p, q] = 2i`) the three
//! criteria evaluated by [`evaluate_criteria`] all carry the bound 4 on their
//! two nontrivial bipartitions:
//!
//! ```text
//! S1 = <D^2(p1 - p2)> + <D^2(q1 + q2 - a0 q0)>   (excludes 1|(0,2), 2|(0,1))
//! S2 = <D^2(p0 + p1)> + <D^2(q1 + a2 q2 - q0)>   (excludes 0|(1,2), 1|(0,2))
//! S3 = <D^2(p0 + p2)> + <D^2(a1 q1 + q2 - q0)>   (excludes 0|(1,2), 2|(0,1))
//! ```
//!
//! Each free parameter is chosen at the analytic minimum of its quadratic
//! variance. Violating all three simultaneously rules out every partially
//! separable splitting of pump, signal and idler.

use crate::basis::{Mode, DIM, P0, P1, P2, Q0, Q1, Q2};
use crate::error::{Error, Result};
use crate::scalar::{as_f64, cast, Real};
use crate::spectra::SpectralMatrix;

/// Separability bound of the sum-of-variance inequality for the bipartition
/// that isolates mode `lone`: `2 (|h_n g_n| + |h_k g_k + h_m g_m|)`.
pub fn vf_bound<T: Real>(h: &[T; 3], g: &[T; 3], lone: Mode) -> T {
    let n = lone.index();
    let (k, m) = match n {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    cast::<T>(2.0) * ((h[n] * g[n]).abs() + (h[k] * g[k] + h[m] * g[m]).abs())
}

/// Minimize `V(fixed + alpha * direction)` over the real parameter `alpha`.
///
/// The variance is an upward parabola in `alpha`, so the minimum is at
/// `alpha* = -Cov(fixed, direction) / V(direction)` with minimized value
/// `V(fixed) - Cov^2 / V(direction)`.
pub fn optimal_alpha<T: Real>(
    sm: &SpectralMatrix<T>,
    fixed: &[T; DIM],
    direction: &[T; DIM],
) -> Result<(T, T)> {
    let vd = sm.variance(direction);
    if !(vd > cast(1e-12)) {
        return Err(Error::DegenerateDirection {
            variance: as_f64(vd),
        });
    }
    let vf = sm.variance(fixed);
    let cov = sm.covariance(fixed, direction);
    Ok((-cov / vd, vf - cov * cov / vd))
}

/// One of the three criterion combinations: `u` from the `h` coefficients on
/// the amplitude quadratures, `v` from the `g` coefficients on the phase
/// quadratures. `free_index` marks the `g` slot whose coefficient is
/// `alpha * g[free_index]` with the stored entry supplying the sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessCombination<T> {
    pub h: [T; 3],
    pub g: [T; 3],
    pub free_index: Option<usize>,
}

impl<T: Real> WitnessCombination<T> {
    /// u = p1 - p2, v = q1 + q2 - alpha q0.
    pub fn s1() -> Self {
        WitnessCombination {
            h: [T::zero(), T::one(), -T::one()],
            g: [-T::one(), T::one(), T::one()],
            free_index: Some(0),
        }
    }

    /// u = p0 + p1, v = q1 + alpha q2 - q0.
    pub fn s2() -> Self {
        WitnessCombination {
            h: [T::one(), T::one(), T::zero()],
            g: [-T::one(), T::one(), T::one()],
            free_index: Some(2),
        }
    }

    /// u = p0 + p2, v = alpha q1 + q2 - q0.
    pub fn s3() -> Self {
        WitnessCombination {
            h: [T::one(), T::zero(), T::one()],
            g: [-T::one(), T::one(), T::one()],
            free_index: Some(1),
        }
    }

    /// Coefficients of `u` as a 6-vector in the physical ordering.
    pub fn u_vector(&self) -> [T; DIM] {
        let mut u = [T::zero(); DIM];
        u[P0] = self.h[0];
        u[P1] = self.h[1];
        u[P2] = self.h[2];
        u
    }

    /// Alpha-independent part of `v` as a 6-vector.
    pub fn v_fixed(&self) -> [T; DIM] {
        let mut v = [T::zero(); DIM];
        for (j, slot) in [Q0, Q1, Q2].into_iter().enumerate() {
            if Some(j) != self.free_index {
                v[slot] = self.g[j];
            }
        }
        v
    }

    /// Direction multiplied by alpha (unit coefficient with the stored sign).
    pub fn v_direction(&self) -> [T; DIM] {
        let mut v = [T::zero(); DIM];
        if let Some(j) = self.free_index {
            v[[Q0, Q1, Q2][j]] = self.g[j];
        }
        v
    }

    /// `g` with the free slot replaced by `alpha * g[free]`.
    pub fn g_with_alpha(&self, alpha: T) -> [T; 3] {
        let mut g = self.g;
        if let Some(j) = self.free_index {
            g[j] = alpha * g[j];
        }
        g
    }

    /// `sum_j h_j g_j(alpha)`; zero guarantees `[u, v] = 0`.
    pub fn commutator_sum(&self, alpha: T) -> T {
        let g = self.g_with_alpha(alpha);
        self.h[0] * g[0] + self.h[1] * g[1] + self.h[2] * g[2]
    }

    /// Separability bounds of the three bipartitions at this `alpha`.
    pub fn bounds(&self, alpha: T) -> [T; 3] {
        let g = self.g_with_alpha(alpha);
        [
            vf_bound(&self.h, &g, Mode::Pump),
            vf_bound(&self.h, &g, Mode::Signal),
            vf_bound(&self.h, &g, Mode::Idler),
        ]
    }
}

/// Minimized criteria, optimal free parameters, per-bipartition bounds and
/// violation flags at one analysis frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResult<T> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
    /// Optimal free parameter of S1 (coefficient of q0).
    pub alpha0: T,
    /// Optimal free parameter of S2 (coefficient of q2).
    pub alpha2: T,
    /// Optimal free parameter of S3 (coefficient of q1).
    pub alpha1: T,
    /// `bounds[i][n]`: separability bound of criterion i+1 for the
    /// bipartition that isolates mode n.
    pub bounds: [[T; 3]; 3],
    /// `violated[i]`: criterion i+1 dropped below 4.
    pub violated: [bool; 3],
}

impl<T: Real> WitnessResult<T> {
    /// `excludes()[i][n]`: criterion i+1 rules out separability across the
    /// bipartition isolating mode n (its value undercuts that bound).
    pub fn excludes(&self) -> [[bool; 3]; 3] {
        let values = [self.s1, self.s2, self.s3];
        let mut out = [[false; 3]; 3];
        for i in 0..3 {
            for n in 0..3 {
                out[i][n] = values[i] < self.bounds[i][n];
            }
        }
        out
    }

    /// True when all three bipartitions are excluded by some criterion, i.e.
    /// the state is genuinely tripartite entangled.
    pub fn tripartite(&self) -> bool {
        let ex = self.excludes();
        (0..3).all(|n| (0..3).any(|i| ex[i][n]))
    }
}

/// Evaluate S1, S2, S3 with analytically optimal free parameters.
pub fn evaluate_criteria<T: Real>(sm: &SpectralMatrix<T>) -> Result<WitnessResult<T>> {
    let combos = [
        WitnessCombination::s1(),
        WitnessCombination::s2(),
        WitnessCombination::s3(),
    ];
    let mut values = [T::zero(); 3];
    let mut alphas = [T::zero(); 3];
    let mut bounds = [[T::zero(); 3]; 3];
    let mut violated = [false; 3];
    let four = cast::<T>(4.0);

    for (i, combo) in combos.iter().enumerate() {
        let var_u = sm.variance(&combo.u_vector());
        let (alpha, var_v) = optimal_alpha(sm, &combo.v_fixed(), &combo.v_direction())?;
        if i == 0 {
            // For S1 the commutator vanishes identically in alpha.
            let c = combo.commutator_sum(alpha);
            assert!(
                c.abs() <= cast(1e-12),
                "S1 combination stopped commuting: h.g = {c}"
            );
        }
        values[i] = var_u + var_v;
        alphas[i] = alpha;
        bounds[i] = combo.bounds(alpha);
        violated[i] = values[i] < four;
    }

    Ok(WitnessResult {
        s1: values[0],
        s2: values[1],
        s3: values[2],
        alpha0: alphas[0],
        alpha2: alphas[1],
        alpha1: alphas[2],
        bounds,
        violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat;
    use num_complex::Complex;

    fn vacuum() -> SpectralMatrix<f64> {
        let mut s: CMat<f64, DIM> = [[Complex::new(0.0, 0.0); DIM]; DIM];
        for (i, row) in s.iter_mut().enumerate() {
            row[i] = Complex::new(1.0, 0.0);
        }
        SpectralMatrix { omega: 1.0, s }
    }

    #[test]
    fn vf_bound_examples() {
        // h, g of S1 with alpha folded in: bound 4 regardless of alpha.
        for alpha in [-3.0, 0.0, 0.7, 10.0] {
            let h = [0.0, 1.0, -1.0];
            let g = [-alpha, 1.0, 1.0];
            assert_eq!(vf_bound(&h, &g, Mode::Signal), 4.0);
            assert_eq!(vf_bound(&h, &g, Mode::Pump), 0.0);
        }
        let h = [1.0, 1.0, 1.0];
        let g = [1.0, 1.0, 1.0];
        assert_eq!(vf_bound(&h, &g, Mode::Idler), 6.0);
    }

    #[test]
    fn optimal_alpha_closed_form() {
        // V(fixed) = 2, Cov = -0.5, V(dir) = 1.25 -> alpha* = 0.4, min = 1.8
        let mut s: CMat<f64, DIM> = vacuum().s;
        s[Q1][Q1] = Complex::new(2.0, 0.0);
        s[Q2][Q2] = Complex::new(1.25, 0.0);
        s[Q1][Q2] = Complex::new(-0.5, 0.0);
        s[Q2][Q1] = Complex::new(-0.5, 0.0);
        let sm = SpectralMatrix { omega: 1.0, s };
        let mut fixed = [0.0; DIM];
        fixed[Q1] = 1.0;
        let mut dir = [0.0; DIM];
        dir[Q2] = 1.0;
        let (alpha, vmin) = optimal_alpha(&sm, &fixed, &dir).unwrap();
        assert!((alpha - 0.4).abs() < 1e-15);
        assert!((vmin - 1.8).abs() < 1e-15);
    }

    #[test]
    fn uncorrelated_direction_keeps_fixed_variance() {
        let sm = vacuum();
        let mut fixed = [0.0; DIM];
        fixed[Q1] = 1.0;
        fixed[Q2] = 1.0;
        let mut dir = [0.0; DIM];
        dir[Q0] = -1.0;
        let (alpha, vmin) = optimal_alpha(&sm, &fixed, &dir).unwrap();
        assert_eq!(alpha, 0.0);
        assert_eq!(vmin, 2.0);
    }

    #[test]
    fn degenerate_direction_rejected() {
        let sm = vacuum();
        let fixed = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let dir = [0.0; DIM];
        assert!(matches!(
            optimal_alpha(&sm, &fixed, &dir),
            Err(Error::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn vacuum_variances_add_up() {
        // two unit-variance quadratures in any +-1 combination
        let sm = vacuum();
        assert_eq!(sm.variance(&[0.0, 0.0, 1.0, 0.0, -1.0, 0.0]), 2.0);
        assert_eq!(sm.variance(&[0.0, 0.0, 0.0, 1.0, 0.0, 1.0]), 2.0);
    }

    #[test]
    fn vacuum_sits_on_the_separable_boundary() {
        let w = evaluate_criteria(&vacuum()).unwrap();
        assert_eq!(w.s1, 4.0);
        assert_eq!(w.s2, 4.0);
        assert_eq!(w.s3, 4.0);
        assert_eq!(w.alpha0, 0.0);
        assert_eq!(w.alpha1, 0.0);
        assert_eq!(w.alpha2, 0.0);
        assert_eq!(w.violated, [false; 3]);
        assert!(!w.tripartite());
        // nontrivial bipartition bounds are 4; the structurally trivial one is 0
        assert_eq!(w.bounds[0], [0.0, 4.0, 4.0]);
        assert_eq!(w.bounds[1], [4.0, 4.0, 0.0]);
        assert_eq!(w.bounds[2], [4.0, 0.0, 4.0]);
    }

    #[test]
    fn combination_vectors() {
        let s2 = WitnessCombination::<f64>::s2();
        assert_eq!(s2.u_vector(), [1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s2.v_fixed(), [0.0, -1.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(s2.v_direction(), [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        // h.g vanishes identically for all three paper combinations
        for combo in [
            WitnessCombination::<f64>::s1(),
            WitnessCombination::s2(),
            WitnessCombination::s3(),
        ] {
            for alpha in [-2.0, 0.0, 1.3] {
                assert_eq!(combo.commutator_sum(alpha), 0.0);
            }
        }
    }
}
