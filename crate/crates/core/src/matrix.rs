//! Dense square complex matrices and state vectors at small fixed dimension.
//!
//! Matrices are capped at [`MAX_MATRIX_DIM`]; pure-state vectors may be larger
//! (up to [`MAX_VECTOR_DIM`]) because multi-party swap constructions act on
//! vectors factor-by-factor without ever materialising the composite operator.

use num_complex::Complex;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// Largest allowed square-matrix dimension.
pub const MAX_MATRIX_DIM: usize = 256;
/// Largest allowed state-vector dimension (8-dim per party times qubit ancillas).
pub const MAX_VECTOR_DIM: usize = 4096;

pub type C<T> = Complex<T>;

/// Row-major dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix<T: Scalar> {
    dim: usize,
    data: Vec<C<T>>,
}

impl<T: Scalar> std::fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim.min(8) {
            for j in 0..self.dim.min(8) {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(dim: usize) -> Result<Self, CoreError> {
        if dim == 0 || dim > MAX_MATRIX_DIM {
            return Err(CoreError::DimensionCap { dim, cap: MAX_MATRIX_DIM });
        }
        Ok(Self { dim, data: vec![C::new(T::zero(), T::zero()); dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self, CoreError> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Builds a matrix from row-major `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<(T, T)>]) -> Result<Self, CoreError> {
        let dim = rows.len();
        let mut m = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(CoreError::NotSquare { rows: dim, cols: row.len() });
            }
            for (j, &(re, im)) in row.iter().enumerate() {
                m[(i, j)] = C::new(re, im);
            }
        }
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Result<Self, CoreError> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, data }
    }

    pub fn scale(&self, c: C<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn scale_re(&self, c: T) -> Self {
        self.scale(C::new(c, T::zero()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![C::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self { dim: n, data: vec![C::new(T::zero(), T::zero()); n * n] };
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(C::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.dim, v.len());
        let n = self.dim;
        let mut out = vec![C::new(T::zero(), T::zero()); n];
        for i in 0..n {
            let mut acc = C::new(T::zero(), T::zero());
            for j in 0..n {
                acc = acc + self.data[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Largest entry-wise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|a| a.norm()).fold(T::zero(), T::max)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self, CoreError> {
        let n = self.dim * other.dim;
        let mut out = Self::zeros(n)?;
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self[(i1, j1)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for i2 in 0..other.dim {
                    for j2 in 0..other.dim {
                        out[(i1 * other.dim + i2, j1 * other.dim + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `tr[(M₁ ⊗ M₂ ⊗ … ⊗ M_k) ρ]` without materialising the Kronecker product.
    pub fn trace_kron_with(factors: &[&CMatrix<T>], rho: &CMatrix<T>) -> C<T> {
        let dims: Vec<usize> = factors.iter().map(|m| m.dim).collect();
        let total: usize = dims.iter().product();
        assert_eq!(total, rho.dim, "factor dims must multiply to rho dim");
        let mut acc = C::new(T::zero(), T::zero());
        for i in 0..total {
            for j in 0..total {
                let r = rho[(j, i)];
                if r.re == T::zero() && r.im == T::zero() {
                    continue;
                }
                let mut k = C::new(T::one(), T::zero());
                let (mut ii, mut jj) = (i, j);
                for (f, &d) in factors.iter().zip(&dims).rev() {
                    k = k * f[(ii % d, jj % d)];
                    ii /= d;
                    jj /= d;
                }
                acc = acc + k * r;
            }
        }
        acc
    }

    /// Outer product |v⟩⟨v| as a density-like matrix.
    pub fn outer(v: &[C<T>]) -> Result<Self, CoreError> {
        let mut m = Self::zeros(v.len())?;
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }
}

/// ‖v‖₂ of a complex vector.
pub fn vec_norm<T: Scalar>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
}

pub fn vec_dot<T: Scalar>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .fold(C::new(T::zero(), T::zero()), |s, t| s + t)
}

pub fn kron_vec<T: Scalar>(a: &[C<T>], b: &[C<T>]) -> Result<Vec<C<T>>, CoreError> {
    let n = a.len() * b.len();
    if n > MAX_VECTOR_DIM {
        return Err(CoreError::DimensionCap { dim: n, cap: MAX_VECTOR_DIM });
    }
    let mut out = Vec::with_capacity(n);
    for x in a {
        for y in b {
            out.push(*x * *y);
        }
    }
    Ok(out)
}

/// Applies `op` to the contiguous factor block starting at `pos` of a state
/// vector whose index factors as `dims` (row-major, leftmost factor slowest).
/// `op` must act on exactly `block` consecutive factors whose dims multiply to
/// `op.dim()`.
pub fn apply_on_factors<T: Scalar>(
    v: &[C<T>],
    dims: &[usize],
    pos: usize,
    block: usize,
    op: &CMatrix<T>,
) -> Vec<C<T>> {
    let total: usize = dims.iter().product();
    assert_eq!(total, v.len());
    let d_block: usize = dims[pos..pos + block].iter().product();
    assert_eq!(d_block, op.dim());
    let right: usize = dims[pos + block..].iter().product();
    let left: usize = dims[..pos].iter().product();
    let mut out = vec![C::new(T::zero(), T::zero()); v.len()];
    for l in 0..left {
        for a in 0..d_block {
            for b in 0..d_block {
                let o = op[(a, b)];
                if o.re == T::zero() && o.im == T::zero() {
                    continue;
                }
                let src = (l * d_block + b) * right;
                let dst = (l * d_block + a) * right;
                for r in 0..right {
                    out[dst + r] = out[dst + r] + o * v[src + r];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn matmul_and_dagger() {
        let a = CMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 1.0)], vec![(0.0, 0.0), (2.0, 0.0)]])
            .unwrap();
        let b = a.dagger();
        assert_eq!(b[(1, 0)], c(0.0, -1.0));
        let p = a.matmul(&b);
        assert!(p.is_hermitian(1e-14));
    }

    #[test]
    fn kron_matches_manual_loop() {
        let sx = CMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
            .unwrap();
        let sz = CMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (-1.0, 0.0)]])
            .unwrap();
        let k = sx.kron(&sz).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = sx[(i / 2, j / 2)] * sz[(i % 2, j % 2)];
                assert_eq!(k[(i, j)], expect);
            }
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        assert!(CMatrix::<f64>::zeros(MAX_MATRIX_DIM).is_ok());
        assert!(matches!(
            CMatrix::<f64>::zeros(MAX_MATRIX_DIM + 1),
            Err(CoreError::DimensionCap { .. })
        ));
    }

    #[test]
    fn trace_kron_agrees_with_materialised_product() {
        let a = CMatrix::from_rows(&[vec![(0.3, 0.1), (0.2, 0.0)], vec![(0.2, 0.0), (-0.4, 0.0)]])
            .unwrap();
        let b = CMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, -0.5)], vec![(0.0, 0.5), (0.2, 0.0)]])
            .unwrap();
        let rho = CMatrix::from_fn(4, |i, j| c(0.1 * (i as f64 + 1.0), 0.05 * (j as f64 - 1.5)))
            .unwrap();
        let direct = a.kron(&b).unwrap().matmul(&rho).trace();
        let lazy = CMatrix::trace_kron_with(&[&a, &b], &rho);
        assert!((direct - lazy).norm() < 1e-12);
    }

    #[test]
    fn apply_on_factors_matches_kron() {
        let sx = CMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
            .unwrap();
        let id = CMatrix::<f64>::identity(2).unwrap();
        let v: Vec<C<f64>> = (0..8).map(|i| c(i as f64, -(i as f64) / 2.0)).collect();
        let big = id.kron(&sx).unwrap().kron(&id).unwrap();
        let want = big.mul_vec(&v);
        let got = apply_on_factors(&v, &[2, 2, 2], 1, 1, &sx);
        for (w, g) in want.iter().zip(&got) {
            assert!((w - g).norm() < 1e-14);
        }
    }
}
