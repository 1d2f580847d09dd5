use num_traits::Zero;

use super::eigen::hermitian_eig;
use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{xlog2x, Cx, Real};

/// Default validation tolerance for density matrices.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalues below this contribute nothing to entropies.
const ENTROPY_FLOOR: f64 = 1e-14;

/// Which qubit of a two-qubit state to keep. `A` is the left tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<R: Real> {
    mat: CMatrix<R>,
    tolerance: R,
}

impl<R: Real> DensityMatrix<R> {
    pub fn new(mat: CMatrix<R>) -> Result<Self> {
        Self::with_tolerance(mat, R::lit(DEFAULT_TOL))
    }

    /// Validates all invariants at `tolerance`.
    pub fn with_tolerance(mat: CMatrix<R>, tolerance: R) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::InvalidState {
                reason: "non-finite entry".into(),
            });
        }
        let asym = mat.hermiticity_residual();
        if asym > tolerance {
            return Err(Error::NotHermitian {
                max_asymmetry: asym.as_f64(),
            });
        }
        let tr = mat.trace();
        if (tr.re - R::one()).abs() > tolerance || tr.im.abs() > tolerance {
            return Err(Error::InvalidState {
                reason: format!("trace = {:.12} {:+.3e}i", tr.re, tr.im),
            });
        }
        let min_eig = hermitian_eig(&mat)?.values[0];
        if min_eig < -tolerance {
            return Err(Error::InvalidState {
                reason: format!("negative eigenvalue {:.3e}", min_eig.as_f64()),
            });
        }
        Ok(Self {
            mat: mat.hermitian_part(),
            tolerance,
        })
    }

    /// Wraps a matrix known to be valid up to round-off (Hermitian part taken).
    pub(crate) fn assume_valid(mat: CMatrix<R>) -> Self {
        Self {
            mat: mat.hermitian_part(),
            tolerance: R::lit(DEFAULT_TOL),
        }
    }

    /// Pure state `|v><v|` (normalized internally).
    pub fn pure(v: &[Cx<R>]) -> Result<Self> {
        Self::new(CMatrix::projector(v))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::assume_valid(CMatrix::identity(dim).scale(R::one() / R::of_usize(dim)))
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix<R> {
        &self.mat
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    #[inline]
    pub fn tolerance(&self) -> R {
        self.tolerance
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<R> {
        self.mat[(i, j)]
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<R> {
        hermitian_eig(&self.mat)
            .expect("density matrix is Hermitian")
            .values
    }

    pub fn purity(&self) -> R {
        (self.mat * self.mat).trace().re
    }

    /// Convex combination `p self + (1-p) other`.
    pub fn mix(&self, other: &Self, p: R) -> Self {
        Self::assume_valid(self.mat.scale(p) + other.mat.scale(R::one() - p))
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, u: &CMatrix<R>) -> Self {
        Self::assume_valid(*u * self.mat * u.adjoint())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::assume_valid(self.mat.kron(&other.mat))
    }
}

/// Reduced state of one qubit of a two-qubit state (basis |00>,|01>,|10>,|11>).
pub fn partial_trace<R: Real>(rho: &DensityMatrix<R>, keep: Subsystem) -> Result<DensityMatrix<R>> {
    if rho.dim() != 4 {
        return Err(Error::Dimension { dim: rho.dim() });
    }
    let m = rho.matrix();
    let mut out = CMatrix::zeros(2);
    for x in 0..2 {
        for y in 0..2 {
            let mut acc = Cx::zero();
            for k in 0..2 {
                acc = acc
                    + match keep {
                        Subsystem::B => m[(2 * k + x, 2 * k + y)],
                        Subsystem::A => m[(2 * x + k, 2 * y + k)],
                    };
            }
            out[(x, y)] = acc;
        }
    }
    Ok(DensityMatrix {
        mat: out,
        tolerance: rho.tolerance,
    })
}

/// Von Neumann entropy in bits. Eigenvalues in `[-tol, 0]` are clamped to 0.
pub fn von_neumann_entropy<R: Real>(rho: &DensityMatrix<R>) -> Result<R> {
    let vals = hermitian_eig(rho.matrix())?.values;
    entropy_of_spectrum(&vals, rho.tolerance)
}

fn entropy_of_spectrum<R: Real>(vals: &[R], tolerance: R) -> Result<R> {
    let floor = R::lit(ENTROPY_FLOOR);
    let mut s = R::zero();
    for &v in vals {
        if v < -tolerance {
            return Err(Error::InvalidState {
                reason: format!("negative eigenvalue {:.3e} in entropy", v.as_f64()),
            });
        }
        if v > floor {
            s = s - xlog2x(v);
        }
    }
    Ok(s.max(R::zero()))
}

/// Linear entropy `2 (1 - tr rho^2)`.
pub fn linear_entropy<R: Real>(rho: &DensityMatrix<R>) -> R {
    R::lit(2.0) * (R::one() - rho.purity())
}
