use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cre, Cx, Real};

const MAX_DIM: usize = 4;

/// Small dense complex matrix (dimension 2, 3 or 4), row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix<R: Real> {
    dim: usize,
    data: [Cx<R>; MAX_DIM * MAX_DIM],
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(dim: usize) -> Self {
        assert!((2..=MAX_DIM).contains(&dim), "CMatrix dimension {dim} unsupported");
        Self {
            dim,
            data: [Cx::zero(); MAX_DIM * MAX_DIM],
        }
    }

    pub fn try_zeros(dim: usize) -> Result<Self> {
        if (2..=MAX_DIM).contains(&dim) {
            Ok(Self::zeros(dim))
        } else {
            Err(Error::Dimension { dim })
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Cx::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cx<R>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[&[Cx<R>]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::try_zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension { dim: row.len() });
            }
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[&[R]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::try_zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension { dim: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = cre(x);
            }
        }
        Ok(m)
    }

    pub fn diag(values: &[R]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = cre(v);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Cx<R>], v: &[Cx<R>]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    /// Projector onto a (not necessarily normalized) vector.
    pub fn projector(v: &[Cx<R>]) -> Self {
        let n: R = v.iter().map(|z| z.norm_sqr()).sum();
        Self::outer(v, v).scale(R::one() / n)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: R) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Cx<R>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Cx<R>) -> Cx<R>) -> Self {
        Self::from_fn(self.dim, |i, j| f(self[(i, j)]))
    }

    pub fn trace(&self) -> Cx<R> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Cx::zero(), |a, b| a + b)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> R {
        self.entries().map(|z| z.norm()).fold(R::zero(), R::max)
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_residual(&self) -> R {
        (*self - self.adjoint()).max_abs()
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(R::lit(0.5))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn entries(&self) -> impl Iterator<Item = Cx<R>> + '_ {
        (0..self.dim).flat_map(move |i| (0..self.dim).map(move |j| self[(i, j)]))
    }

    pub fn column(&self, j: usize) -> Vec<Cx<R>> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, v: &[Cx<R>]) -> Vec<Cx<R>> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).fold(Cx::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    /// Kronecker product of two 2x2 matrices.
    pub fn kron(&self, other: &Self) -> Self {
        assert!(self.dim == 2 && other.dim == 2, "kron defined for 2x2 factors");
        Self::from_fn(4, |i, j| self[(i / 2, j / 2)] * other[(i % 2, j % 2)])
    }

    /// Hilbert–Schmidt inner product `tr(A^dagger B)`.
    pub fn inner(&self, other: &Self) -> Cx<R> {
        (self.adjoint() * *other).trace()
    }

    /// Entry-wise maximum distance.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        (*self - *other).max_abs()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }
}

impl<R: Real> Index<(usize, usize)> for CMatrix<R> {
    type Output = Cx<R>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cx<R> {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * MAX_DIM + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for CMatrix<R> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<R> {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * MAX_DIM + j]
    }
}

impl<R: Real> Add for CMatrix<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl<R: Real> Sub for CMatrix<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl<R: Real> Mul for CMatrix<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (0..n).fold(Cx::zero(), |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }
}

impl<R: Real> fmt::Debug for CMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})[", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices in the basis (|0>, |1>).
pub mod pauli {
    use super::CMatrix;
    use crate::scalar::{cx, Real};
    use num_traits::{One, Zero};

    pub fn x<R: Real>() -> CMatrix<R> {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = num_complex::Complex::one();
        m[(1, 0)] = num_complex::Complex::one();
        m
    }

    pub fn y<R: Real>() -> CMatrix<R> {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = cx(R::zero(), -R::one());
        m[(1, 0)] = cx(R::zero(), R::one());
        m
    }

    pub fn z<R: Real>() -> CMatrix<R> {
        CMatrix::diag(&[R::one(), -R::one()])
    }

    pub fn all<R: Real>() -> [CMatrix<R>; 3] {
        [x(), y(), z()]
    }

    #[allow(dead_code)]
    pub(crate) fn zero2<R: Real>() -> CMatrix<R> {
        CMatrix::from_fn(2, |_, _| num_complex::Complex::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = CMatrix::<f64>::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }

    #[test]
    fn pauli_algebra() {
        let [x, y, z] = pauli::all::<f64>();
        let i = crate::scalar::cx(0.0, 1.0);
        assert!((x * y).max_abs_diff(&z.scale_c(i)) < 1e-15);
        assert!((x * x).max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(CMatrix::<f64>::try_zeros(5).is_err());
        assert!(CMatrix::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0]]).is_err());
    }
}
