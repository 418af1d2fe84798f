//! Shared helpers for the integration tests: an eigenvalue oracle that is
//! independent of any block-structure knowledge (characteristic polynomial
//! via Faddeev-LeVerrier, roots via Durand-Kerner), and a Newton solver for
//! the nonlinear mean-field stationarity equations.

#![allow(dead_code)]

use num_complex::Complex64;

/// Coefficients of det(lambda I - A) = lambda^6 + c[0] lambda^5 + ... + c[5].
pub fn char_poly(a: &[[f64; 6]; 6]) -> [f64; 6] {
    let mut c = [0.0; 6];
    let mut m = [[0.0f64; 6]; 6]; // starts as A * I
    for k in 0..6 {
        if k == 0 {
            m = *a;
        } else {
            // M_k = A (M_{k-1} + c_{k-1} I)
            let mut shifted = m;
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += c[k - 1];
            }
            let mut next = [[0.0f64; 6]; 6];
            for i in 0..6 {
                for l in 0..6 {
                    for j in 0..6 {
                        next[i][j] += a[i][l] * shifted[l][j];
                    }
                }
            }
            m = next;
        }
        let trace: f64 = (0..6).map(|i| m[i][i]).sum();
        c[k] = -trace / (k as f64 + 1.0);
    }
    c
}

fn poly_eval(c: &[f64; 6], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &coef in c {
        acc = acc * z + coef;
    }
    acc
}

/// All six roots of the monic polynomial by Durand-Kerner iteration.
pub fn poly_roots(c: &[f64; 6]) -> [Complex64; 6] {
    let seed = Complex64::new(0.4, 0.9);
    let mut z: [Complex64; 6] = std::array::from_fn(|i| seed.powu(i as u32 + 1));
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..6 {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let delta = poly_eval(c, z[i]) / denom;
            z[i] -= delta;
            worst = worst.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-14 {
            break;
        }
    }
    z
}

/// Eigenvalues of an arbitrary real 6x6 matrix, scaled for conditioning.
pub fn eigenvalues_oracle(a: &[[f64; 6]; 6]) -> [Complex64; 6] {
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()));
    if scale == 0.0 {
        return [Complex64::new(0.0, 0.0); 6];
    }
    let mut b = *a;
    for row in &mut b {
        for x in row.iter_mut() {
            *x /= scale;
        }
    }
    let roots = poly_roots(&char_poly(&b));
    roots.map(|z| z * scale)
}

/// Solve the stationary mean-field equations
///
///   0 = -gamma0 a0 - chi b^2 + eps        (pump, drive eps = sqrt(sigma) eps_thr)
///   0 = -gamma  b  + chi a0 b             (twins, b > 0 branch)
///
/// by damped Newton iteration, independently of the closed-form solution.
/// Returns (a0, b).
pub fn mean_field_newton(t0: f64, t: f64, mu0: f64, mu: f64, sigma: f64, chi: f64) -> (f64, f64) {
    let gamma0 = t0 / 2.0 + mu0 / 2.0;
    let gamma = t / 2.0 + mu / 2.0;
    let eps = sigma.sqrt() * gamma0 * gamma / chi;

    let mut a0 = eps / (2.0 * gamma0);
    let mut b = (eps / (2.0 * chi)).sqrt();
    for _ in 0..200 {
        let f1 = -gamma0 * a0 - chi * b * b + eps;
        let f2 = -gamma * b + chi * a0 * b;
        if f1.abs().max(f2.abs()) < 1e-16 {
            break;
        }
        let j11 = -gamma0;
        let j12 = -2.0 * chi * b;
        let j21 = chi * b;
        let j22 = -gamma + chi * a0;
        let det = j11 * j22 - j12 * j21;
        assert!(det.abs() > 1e-300, "singular Jacobian in mean-field Newton");
        let da0 = (f1 * j22 - f2 * j12) / det;
        let db = (j11 * f2 - j21 * f1) / det;
        a0 -= da0;
        b -= db;
        if b < 0.0 {
            b = 1e-6;
        }
    }
    let f1 = -gamma0 * a0 - chi * b * b + eps;
    let f2 = -gamma * b + chi * a0 * b;
    assert!(
        f1.abs().max(f2.abs()) < 1e-13,
        "mean-field Newton failed to converge: residual ({f1:.3e}, {f2:.3e})"
    );
    (a0, b)
}
