//! Fixed-size dense matrix helpers for the 6x6 quadrature algebra.
//!
//! Matrices are plain nested arrays, generic over the scalar and the
//! dimension. The sizes in play (2..6) are small enough that cyclic Jacobi
//! and Gauss-Jordan elimination are accurate and effectively free, so no
//! external linear-algebra backend is pulled in.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, cast, Real};

pub type Mat<T, const N: usize> = [[T; N]; N];
pub type CMat<T, const N: usize> = [[Complex<T>; N]; N];

pub fn zeros<T: Real, const N: usize>() -> Mat<T, N> {
    [[T::zero(); N]; N]
}

pub fn identity<T: Real, const N: usize>() -> Mat<T, N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn cidentity<T: Real, const N: usize>() -> CMat<T, N> {
    let mut m = [[Complex::new(T::zero(), T::zero()); N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    m
}

pub fn to_complex<T: Real, const N: usize>(m: &Mat<T, N>) -> CMat<T, N> {
    let mut out = [[Complex::new(T::zero(), T::zero()); N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = Complex::new(m[i][j], T::zero());
        }
    }
    out
}

pub fn matvec<T: Real, const N: usize>(m: &Mat<T, N>, x: &[T; N]) -> [T; N] {
    let mut out = [T::zero(); N];
    for i in 0..N {
        let mut acc = T::zero();
        for j in 0..N {
            acc += m[i][j] * x[j];
        }
        out[i] = acc;
    }
    out
}

pub fn matmul<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn transpose<T: Real, const N: usize>(m: &Mat<T, N>) -> Mat<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = m[j][i];
        }
    }
    out
}

pub fn cmatmul<T: Real, const N: usize>(a: &CMat<T, N>, b: &CMat<T, N>) -> CMat<T, N> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = [[zero; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == zero {
                continue;
            }
            for j in 0..N {
                out[i][j] = out[i][j] + aik * b[k][j];
            }
        }
    }
    out
}

/// a - b, entrywise.
pub fn csub<T: Real, const N: usize>(a: &CMat<T, N>, b: &CMat<T, N>) -> CMat<T, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = out[i][j] - b[i][j];
        }
    }
    out
}

pub fn cadd<T: Real, const N: usize>(a: &CMat<T, N>, b: &CMat<T, N>) -> CMat<T, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = out[i][j] + b[i][j];
        }
    }
    out
}

pub fn cadjoint<T: Real, const N: usize>(m: &CMat<T, N>) -> CMat<T, N> {
    let mut out = [[Complex::new(T::zero(), T::zero()); N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

/// M * M^dagger. Hermitian by construction: entry (j, i) is computed as the
/// exact conjugate of entry (i, j).
pub fn gram<T: Real, const N: usize>(m: &CMat<T, N>) -> CMat<T, N> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = [[zero; N]; N];
    for i in 0..N {
        for j in i..N {
            let mut acc = zero;
            for k in 0..N {
                acc = acc + m[i][k] * m[j][k].conj();
            }
            out[i][j] = acc;
            out[j][i] = acc.conj();
        }
    }
    out
}

/// R * S * R^T for a real rotation R and complex S.
pub fn sandwich<T: Real, const N: usize>(r: &Mat<T, N>, s: &CMat<T, N>) -> CMat<T, N> {
    let rc = to_complex(r);
    let rt = to_complex(&transpose(r));
    cmatmul(&rc, &cmatmul(s, &rt))
}

/// R * M * R^T, real.
pub fn sandwich_real<T: Real, const N: usize>(r: &Mat<T, N>, m: &Mat<T, N>) -> Mat<T, N> {
    matmul(r, &matmul(m, &transpose(r)))
}

/// u^T M v.
pub fn quad_form<T: Real, const N: usize>(m: &Mat<T, N>, u: &[T; N], v: &[T; N]) -> T {
    let mut acc = T::zero();
    for i in 0..N {
        if u[i] == T::zero() {
            continue;
        }
        for j in 0..N {
            acc += u[i] * m[i][j] * v[j];
        }
    }
    acc
}

/// Inverse of a complex matrix by Gauss-Jordan elimination with partial
/// pivoting. Zero multipliers are skipped, so block-diagonal structure is
/// preserved exactly.
pub fn cinverse<T: Real, const N: usize>(m: &CMat<T, N>) -> Result<CMat<T, N>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut a = *m;
    let mut inv = cidentity::<T, N>();

    let mut scale = T::zero();
    for row in &a {
        for z in row {
            scale = scale.max(z.norm_sqr());
        }
    }
    let scale = scale.sqrt();
    if !(scale > T::zero()) {
        return Err(Error::IllConditioned { pivot: 0.0 });
    }
    let floor = scale * T::epsilon() * cast(1e3);

    for col in 0..N {
        let mut piv_row = col;
        let mut piv_mag = a[col][col].norm_sqr();
        for r in (col + 1)..N {
            let mag = a[r][col].norm_sqr();
            if mag > piv_mag {
                piv_mag = mag;
                piv_row = r;
            }
        }
        let piv_mag = piv_mag.sqrt();
        if piv_mag <= floor {
            return Err(Error::IllConditioned {
                pivot: as_f64(piv_mag),
            });
        }
        if piv_row != col {
            a.swap(col, piv_row);
            inv.swap(col, piv_row);
        }
        let piv = a[col][col];
        for j in 0..N {
            a[col][j] = a[col][j] / piv;
            inv[col][j] = inv[col][j] / piv;
        }
        for r in 0..N {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == zero {
                continue;
            }
            for j in 0..N {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    Ok(inv)
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.
///
/// Returns the eigenvalues in ascending order and the matching eigenvectors
/// as the columns of the second matrix.
pub fn sym_eigen<T: Real, const N: usize>(m: &Mat<T, N>) -> ([T; N], Mat<T, N>) {
    let mut a = *m;
    let mut v = identity::<T, N>();
    let two = cast::<T>(2.0);

    for _sweep in 0..60 {
        let mut changed = false;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                let small = (a[p][p].abs() + a[q][q].abs()) * T::epsilon();
                if apq.abs() <= small {
                    continue;
                }
                changed = true;
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = if theta >= T::zero() {
                    T::one() / (theta + (T::one() + theta * theta).sqrt())
                } else {
                    -T::one() / (-theta + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..N {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut order: [usize; N] = [0; N];
    for (i, slot) in order.iter_mut().enumerate() {
        *slot = i;
    }
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("NaN eigenvalue"));

    let mut vals = [T::zero(); N];
    let mut vecs = zeros::<T, N>();
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = a[src][src];
        for k in 0..N {
            vecs[k][dst] = v[k][src];
        }
    }
    (vals, vecs)
}

/// Symmetric square root of a positive semidefinite matrix; small negative
/// eigenvalues from rounding are clamped to zero.
pub fn sym_sqrt<T: Real, const N: usize>(m: &Mat<T, N>) -> Mat<T, N> {
    let (vals, vecs) = sym_eigen(m);
    let mut out = zeros::<T, N>();
    for (k, &lam) in vals.iter().enumerate() {
        let r = lam.max(T::zero()).sqrt();
        if r == T::zero() {
            continue;
        }
        for i in 0..N {
            for j in 0..N {
                out[i][j] += r * vecs[i][k] * vecs[j][k];
            }
        }
    }
    out
}
