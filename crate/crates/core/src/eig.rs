//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus a
//! dense real Cholesky. Sized for this crate's matrices (dim ≤ 256), where
//! Jacobi's simplicity and unconditional stability beat a tridiagonal QR.


use crate::error::CoreError;
use crate::matrix::{CMatrix, C};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `M = V diag(λ) V†` of a Hermitian matrix.
/// Eigenvalues ascend; `vectors` holds eigenvectors as columns.
pub struct HermitianEig<T: Scalar> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

pub fn hermitian_eig<T: Scalar>(m: &CMatrix<T>, tol: T) -> Result<HermitianEig<T>, CoreError> {
    let dev = m.max_abs_diff(&m.dagger());
    if dev > tol {
        return Err(CoreError::NotHermitian { deviation: dev.to_f64().unwrap_or(f64::NAN) });
    }
    let n = m.dim();
    let mut a = m.clone();
    // enforce exact Hermiticity so rotations see consistent data
    for i in 0..n {
        for j in 0..i {
            let avg = (a[(i, j)] + a[(j, i)].conj()).scale(T::of(0.5));
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
        a[(i, i)] = C::new(a[(i, i)].re, T::zero());
    }
    let mut v = CMatrix::identity(n)?;
    let scale = a.max_abs().max(T::one());
    let stop = T::epsilon() * scale * T::of(n as f64);

    let mut sweeps = 0;
    loop {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[(i, j)].norm());
            }
        }
        if off <= stop {
            break;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(CoreError::EigNoConvergence { sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let napq = apq.norm();
                if napq <= stop * T::of(0.01) {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // phase u with apq = |apq| u; rotation angle from the real 2x2 problem
                let u = apq.unscale(napq);
                let theta = (aqq - app) / (napq + napq);
                let t = {
                    let s = if theta >= T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // columns: |p'> = c|p> - s u*|q>,  |q'> = s u|p> + c|q>
                let (cs, sn) = (C::new(c, T::zero()), C::new(s, T::zero()));
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cs - aiq * sn * u.conj();
                    a[(i, q)] = aip * sn * u + aiq * cs;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * cs - aqj * sn * u;
                    a[(q, j)] = apj * sn * u.conj() + aqj * cs;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cs - viq * sn * u.conj();
                    v[(i, q)] = vip * sn * u + viq * cs;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])])?;
    Ok(HermitianEig { values, vectors })
}

/// Smallest eigenvalue of a real symmetric matrix given as row-major `n×n` slice.
pub fn sym_min_eig<T: Scalar>(a: &[T], n: usize) -> T {
    let m = CMatrix::from_fn(n, |i, j| C::new(a[i * n + j], T::zero())).expect("dim cap");
    let e = hermitian_eig(&m, T::of(1e-8)).expect("symmetric");
    e.values[0]
}

/// In-place lower Cholesky of a row-major real symmetric matrix.
/// Returns `None` when the matrix is not positive definite.
pub fn cholesky<T: Scalar>(a: &[T], n: usize) -> Option<Vec<T>> {
    let mut l = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum = sum - l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= T::zero() {
                    return None;
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Solves `L Lᵀ x = b` given the lower factor.
pub fn chol_solve<T: Scalar>(l: &[T], n: usize, b: &[T]) -> Vec<T> {
    let mut y = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s = s - l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eig_reconstructs_random_hermitian() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 3, 5, 8, 16] {
            let g = CMatrix::from_fn(n, |_, _| {
                C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            })
            .unwrap();
            let h = g.add(&g.dagger());
            let e = hermitian_eig(&h, 1e-10).unwrap();
            // V unitary
            let vtv = e.vectors.dagger().matmul(&e.vectors);
            assert!(vtv.max_abs_diff(&CMatrix::identity(n).unwrap()) < 1e-10);
            // V diag V† == H
            let d = CMatrix::from_fn(n, |i, j| {
                if i == j { C::new(e.values[i], 0.0) } else { C::new(0.0, 0.0) }
            })
            .unwrap();
            let recon = e.vectors.matmul(&d).matmul(&e.vectors.dagger());
            assert!(recon.max_abs_diff(&h) < 1e-9, "n={n}");
            // ascending
            for w in e.values.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
        }
    }

    #[test]
    fn eig_of_pauli_x() {
        let sx =
            CMatrix::<f64>::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
                .unwrap();
        let e = hermitian_eig(&sx, 1e-12).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cholesky_solves() {
        // SPD matrix A = B Bᵀ + I
        let n = 4;
        let b: Vec<f64> = (0..n * n).map(|i| ((i * 7 % 11) as f64) / 11.0).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    a[i * n + j] += b[i * n + k] * b[j * n + k];
                }
            }
            a[i * n + i] += 1.0;
        }
        let l = cholesky(&a, n).unwrap();
        let rhs = vec![1.0, -2.0, 0.5, 3.0];
        let x = chol_solve(&l, n, &rhs);
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += a[i * n + j] * x[j];
            }
            assert!((s - rhs[i]).abs() < 1e-10);
        }
        // non-PD rejected
        let neg = vec![1.0, 0.0, 0.0, -1.0];
        assert!(cholesky(&neg, 2).is_none());
    }
}
