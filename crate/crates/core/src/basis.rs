//! Mode labels, quadrature orderings and the sum/difference basis change.
//!
//! Conventions used throughout the crate:
//!
//! * quadratures: `p` = amplitude, `q` = phase, with `[p_j, q_j'] = 2i d_jj'`
//!   and vacuum variance 1 per quadrature;
//! * physical ordering of a 6-vector: `(p0, q0, p1, q1, p2, q2)` for pump,
//!   signal and idler;
//! * sum/difference ("+/-") ordering: `(p0, q0, p+, q+, p-, q-)` with
//!   `x+ = (x1 + x2)/sqrt(2)` and `x- = (x1 - x2)/sqrt(2)`.

use crate::linalg::{zeros, Mat};
use crate::scalar::Real;

/// Dimension of the three-mode quadrature space.
pub const DIM: usize = 6;

/// Pump slots, shared by both orderings.
pub const P0: usize = 0;
pub const Q0: usize = 1;

/// Twin slots in the sum/difference ordering.
pub const P_PLUS: usize = 2;
pub const Q_PLUS: usize = 3;
pub const P_MINUS: usize = 4;
pub const Q_MINUS: usize = 5;

/// Twin slots in the physical ordering.
pub const P1: usize = 2;
pub const Q1: usize = 3;
pub const P2: usize = 4;
pub const Q2: usize = 5;

/// One of the three cavity modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Pump,
    Signal,
    Idler,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Pump, Mode::Signal, Mode::Idler];

    pub fn index(self) -> usize {
        match self {
            Mode::Pump => 0,
            Mode::Signal => 1,
            Mode::Idler => 2,
        }
    }

    /// (p, q) slots of this mode in the physical ordering.
    pub fn slots(self) -> (usize, usize) {
        let i = self.index();
        (2 * i, 2 * i + 1)
    }
}

/// Orthogonal map from the sum/difference ordering to the physical ordering:
/// `x_phys = R x_pm`. Applying it twice (R then R^T) is the identity.
pub fn plus_minus_rotation<T: Real>() -> Mat<T, DIM> {
    let h = T::FRAC_1_SQRT_2();
    let mut r = zeros::<T, DIM>();
    r[P0][P0] = T::one();
    r[Q0][Q0] = T::one();
    r[P1][P_PLUS] = h;
    r[P1][P_MINUS] = h;
    r[Q1][Q_PLUS] = h;
    r[Q1][Q_MINUS] = h;
    r[P2][P_PLUS] = h;
    r[P2][P_MINUS] = -h;
    r[Q2][Q_PLUS] = h;
    r[Q2][Q_MINUS] = -h;
    r
}

/// Symplectic form in the physical ordering, normalized so that
/// `[x_a, x_b] = 2i Omega_ab` and the vacuum has symplectic eigenvalue 1.
pub fn symplectic_form<T: Real>() -> Mat<T, DIM> {
    let mut om = zeros::<T, DIM>();
    for m in 0..3 {
        om[2 * m][2 * m + 1] = T::one();
        om[2 * m + 1][2 * m] = -T::one();
    }
    om
}
