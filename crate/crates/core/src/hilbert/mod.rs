//! Dense complex linear algebra and tensor-product bookkeeping.
//!
//! All state spaces here are small (at most a few thousand dimensions), so
//! matrices are dense row-major and every operation is a pure function of
//! immutable inputs.

mod eig;
mod expm;

pub use eig::{eig_general, hermitian_eig, schur, Eigen};
pub use expm::expm_unitary;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{atol, Real};

/// Dimensions and index mapping for a Master (x) Slave product space.
///
/// Composite indices are master-major: `(m, s) -> m * slave_dim + s`, so the
/// Slave block conditioned on a fixed Master state is contiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteSpace {
    master_dim: usize,
    slave_dim: usize,
}

impl BipartiteSpace {
    pub fn new(master_dim: usize, slave_dim: usize) -> Result<Self> {
        if master_dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "master dimension must be at least 2, got {master_dim}"
            )));
        }
        if slave_dim < 1 {
            return Err(Error::InvalidParameter(
                "slave dimension must be at least 1".into(),
            ));
        }
        Ok(Self { master_dim, slave_dim })
    }

    pub fn master_dim(&self) -> usize {
        self.master_dim
    }

    pub fn slave_dim(&self) -> usize {
        self.slave_dim
    }

    pub fn composite_dim(&self) -> usize {
        self.master_dim * self.slave_dim
    }

    /// Composite index of Master state `m` paired with Slave state `s`.
    pub fn composite_index(&self, m: usize, s: usize) -> Result<usize> {
        if m >= self.master_dim {
            return Err(Error::IndexOutOfRange { index: m, bound: self.master_dim });
        }
        if s >= self.slave_dim {
            return Err(Error::IndexOutOfRange { index: s, bound: self.slave_dim });
        }
        Ok(m * self.slave_dim + s)
    }

    /// Inverse of [`composite_index`](Self::composite_index).
    pub fn split_index(&self, index: usize) -> Result<(usize, usize)> {
        if index >= self.composite_dim() {
            return Err(Error::IndexOutOfRange { index, bound: self.composite_dim() });
        }
        Ok((index / self.slave_dim, index % self.slave_dim))
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    /// Build from row-major entries, rejecting shape mismatches and
    /// non-finite amplitudes.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<R>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: k / cols.max(1), col: k % cols.max(1) });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(R::zero(), R::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(R::one(), R::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex<R>] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == R::zero() && a.im == R::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| {
                row.iter()
                    .zip(v.iter())
                    .map(|(a, x)| *a * *x)
                    .fold(Complex::new(R::zero(), R::zero()), |acc, z| acc + z)
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, factor: Complex<R>) -> Self {
        let data = self.data.iter().map(|a| *a * factor).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> R {
        self.data.iter().map(|z| z.norm()).fold(R::zero(), R::max)
    }

    /// Largest entrywise magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> R {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), R::max)
    }

    /// Max entry magnitude of `H - H^dag`; zero iff Hermitian.
    pub fn hermiticity_deviation(&self) -> R {
        assert!(self.is_square());
        let mut dev = R::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> R {
        self.data.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }

    pub fn trace(&self) -> Complex<R> {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).fold(Complex::new(R::zero(), R::zero()), |a, b| a + b)
    }

    /// Kronecker product `a (x) b`, consistent with master-major indexing.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut out = Self::zeros(rows, cols);
        for ia in 0..a.rows {
            for ja in 0..a.cols {
                let f = a[(ia, ja)];
                if f.re == R::zero() && f.im == R::zero() {
                    continue;
                }
                for ib in 0..b.rows {
                    for jb in 0..b.cols {
                        out[(ia * b.rows + ib, ja * b.cols + jb)] = f * b[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    /// Square submatrix restricted to `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        assert!(self.is_square());
        Self::from_fn(indices.len(), indices.len(), |i, j| self[(indices[i], indices[j])])
    }

    /// Largest singular value, computed from the Hermitian eigenproblem of
    /// `V^dag V`.
    pub fn max_singular_value(&self) -> Result<R> {
        let gram = self.dagger().mul(self);
        let (values, _) = hermitian_eig(&gram)?;
        let top = values.iter().copied().fold(R::zero(), R::max);
        Ok(top.max(R::zero()).sqrt())
    }
}

impl<R: Real> std::ops::Index<(usize, usize)> for ComplexMatrix<R> {
    type Output = Complex<R>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<R> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<R: Real> {
    amplitudes: Vec<Complex<R>>,
}

impl<R: Real> StateVector<R> {
    pub fn new(amplitudes: Vec<Complex<R>>) -> Result<Self> {
        for (k, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: k, col: 0 });
            }
        }
        Ok(Self { amplitudes })
    }

    /// Basis state `|index>` in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, bound: dim });
        }
        let mut amplitudes = vec![Complex::new(R::zero(), R::zero()); dim];
        amplitudes[index] = Complex::new(R::one(), R::zero());
        Ok(Self { amplitudes })
    }

    /// Equal-weight superposition of basis states `lo..=hi`.
    pub fn uniform(dim: usize, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "uniform range {lo}..={hi} is empty"
            )));
        }
        if hi >= dim {
            return Err(Error::IndexOutOfRange { index: hi, bound: dim });
        }
        let amp = R::one() / R::from_usize(hi - lo + 1).unwrap().sqrt();
        let mut amplitudes = vec![Complex::new(R::zero(), R::zero()); dim];
        for a in amplitudes.iter_mut().take(hi + 1).skip(lo) {
            *a = Complex::new(amp, R::zero());
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> R {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> R {
        self.norm_sqr().sqrt()
    }

    /// Error unless the norm is 1 within `1e-12` (epsilon-floored).
    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - R::one()).abs() > atol::<R>(1e-12) {
            return Err(Error::NotNormalized { norm: norm.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(())
    }

    /// Rescaled to unit norm; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == R::zero() {
            return None;
        }
        let inv = R::one() / n;
        Some(Self {
            amplitudes: self.amplitudes.iter().map(|z| z.scale(inv)).collect(),
        })
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Complex<R> {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * *b)
            .fold(Complex::new(R::zero(), R::zero()), |acc, z| acc + z)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> R {
        self.inner(other).norm_sqr()
    }

    /// Population of basis state `index`.
    pub fn population(&self, index: usize) -> R {
        self.amplitudes[index].norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn composite_index_examples() {
        let s = BipartiteSpace::new(3, 4).unwrap();
        assert_eq!(s.composite_index(0, 0).unwrap(), 0);
        assert_eq!(s.composite_index(1, 2).unwrap(), 6);
        let s2 = BipartiteSpace::new(2, 2).unwrap();
        assert_eq!(s2.composite_index(1, 1).unwrap(), 3);
    }

    #[test]
    fn composite_index_roundtrip() {
        let s = BipartiteSpace::new(5, 7).unwrap();
        for m in 0..5 {
            for n in 0..7 {
                let idx = s.composite_index(m, n).unwrap();
                assert_eq!(s.split_index(idx).unwrap(), (m, n));
            }
        }
    }

    #[test]
    fn composite_index_out_of_range() {
        let s = BipartiteSpace::new(3, 4).unwrap();
        assert!(matches!(s.composite_index(3, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.composite_index(0, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.split_index(12), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn matrix_rejects_non_finite() {
        let bad = vec![Complex64::new(f64::NAN, 0.0)];
        assert!(matches!(
            ComplexMatrix::new(1, 1, bad),
            Err(Error::NonFiniteEntry { .. })
        ));
    }

    #[test]
    fn matrix_rejects_shape_mismatch() {
        let data = vec![Complex64::new(1.0, 0.0); 3];
        assert!(matches!(
            ComplexMatrix::new(2, 2, data),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_matches_master_major_layout() {
        let a = ComplexMatrix::<f64>::from_fn(2, 2, |i, j| {
            Complex64::new((2 * i + j) as f64, 0.0)
        });
        let b = ComplexMatrix::<f64>::identity(3);
        let k = ComplexMatrix::kron(&a, &b);
        let space = BipartiteSpace::new(2, 3).unwrap();
        for m in 0..2 {
            for mp in 0..2 {
                for s in 0..3 {
                    for sp in 0..3 {
                        let i = space.composite_index(mp, sp).unwrap();
                        let j = space.composite_index(m, s).unwrap();
                        let expect = if s == sp { a[(mp, m)] } else { Complex64::new(0.0, 0.0) };
                        assert_eq!(k[(i, j)], expect);
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_state_is_normalized() {
        let psi = StateVector::<f64>::uniform(10, 0, 4).unwrap();
        psi.check_normalized().unwrap();
        assert_eq!(psi.population(5), 0.0);
        assert!((psi.population(2) - 0.2).abs() < 1e-15);
    }
}
