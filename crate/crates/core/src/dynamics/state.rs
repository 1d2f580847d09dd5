use std::fmt::Debug;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::qlinalg::{CMatrix, DensityMatrix};
use crate::scalar::{cre, Real};

/// Marker for the basis a two-qubit density matrix is expressed in.
pub trait Basis: Copy + Debug + PartialEq + Send + Sync + 'static {
    const NAME: &'static str;
}

/// Collective basis `(|e>, |s>, |a>, |g>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dicke;

/// Computational basis `(|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Product;

impl Basis for Dicke {
    const NAME: &'static str = "dicke";
}

impl Basis for Product {
    const NAME: &'static str = "product";
}

/// Row/column indices in the Dicke basis.
pub mod dicke_index {
    pub const E: usize = 0;
    pub const S: usize = 1;
    pub const A: usize = 2;
    pub const G: usize = 3;
}

/// Two-qubit state tagged with its basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubit<R: Real, B: Basis> {
    rho: DensityMatrix<R>,
    _basis: PhantomData<B>,
}

pub type DickeState<R> = TwoQubit<R, Dicke>;
pub type ProductState<R> = TwoQubit<R, Product>;

impl<R: Real, B: Basis> TwoQubit<R, B> {
    pub fn new(rho: DensityMatrix<R>) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::Dimension { dim: rho.dim() });
        }
        Ok(Self {
            rho,
            _basis: PhantomData,
        })
    }

    /// Validates `m` as a density matrix in this basis.
    pub fn from_matrix(m: CMatrix<R>) -> Result<Self> {
        Self::new(DensityMatrix::new(m)?)
    }

    pub(crate) fn assume_valid(m: CMatrix<R>) -> Self {
        Self {
            rho: DensityMatrix::assume_valid(m),
            _basis: PhantomData,
        }
    }

    #[inline]
    pub fn rho(&self) -> &DensityMatrix<R> {
        &self.rho
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix<R> {
        self.rho.matrix()
    }

    #[inline]
    pub fn basis(&self) -> &'static str {
        B::NAME
    }

    #[inline]
    pub fn population(&self, i: usize) -> R {
        self.rho.get(i, i).re
    }
}

/// Columns are the Dicke vectors written in the product basis.
pub fn dicke_to_product_unitary<R: Real>() -> CMatrix<R> {
    let h = R::FRAC_1_SQRT_2();
    let z = R::zero();
    let o = R::one();
    CMatrix::from_real_rows(&[&[o, z, z, z], &[z, h, h, z], &[z, h, -h, z], &[z, z, z, o]])
        .expect("4x4 literal")
}

pub fn to_dicke<R: Real>(ps: &ProductState<R>) -> DickeState<R> {
    let u = dicke_to_product_unitary::<R>();
    TwoQubit::assume_valid(u.adjoint() * *ps.matrix() * u)
}

pub fn to_product<R: Real>(ds: &DickeState<R>) -> ProductState<R> {
    let u = dicke_to_product_unitary::<R>();
    TwoQubit::assume_valid(u * *ds.matrix() * u.adjoint())
}

/// Diagonal Dicke state with populations `(p_e, p_s, p_a, p_g)`.
pub fn dicke_diagonal<R: Real>(p: [R; 4]) -> Result<DickeState<R>> {
    DickeState::from_matrix(CMatrix::diag(&p))
}

/// Pure state with Dicke amplitudes `(c_e, c_s, c_a, c_g)`.
pub fn dicke_pure<R: Real>(c: [R; 4]) -> Result<DickeState<R>> {
    DickeState::new(DensityMatrix::pure(&c.map(cre))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use proptest::prelude::*;

    #[test]
    fn single_excitation_product_state() {
        let ps = ProductState::<f64>::from_matrix(CMatrix::diag(&[0.0, 1.0, 0.0, 0.0])).unwrap();
        let ds = to_dicke(&ps);
        for (i, j) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
            assert!((ds.matrix()[(i, j)] - cre(0.5)).norm() < 1e-15);
        }
        assert_eq!(ds.basis(), "dicke");
        assert_eq!(ps.basis(), "product");
    }

    #[test]
    fn doubly_excited_state_is_shared() {
        let ps = ProductState::<f64>::from_matrix(CMatrix::diag(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(to_dicke(&ps).matrix().max_abs_diff(ps.matrix()) < 1e-16);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let q = DensityMatrix::<f64>::maximally_mixed(2);
        assert!(matches!(DickeState::new(q), Err(Error::Dimension { dim: 2 })));
    }

    proptest! {
        #[test]
        fn round_trip_preserves_spectrum(seed in prop::collection::vec(-1.0f64..1.0, 32)) {
            let g = CMatrix::from_fn(4, |i, j| cx(seed[4 * i + j], seed[16 + 4 * i + j]));
            let m = g * g.adjoint();
            let tr = m.trace().re;
            let ps = ProductState::from_matrix(m.scale(1.0 / tr)).unwrap();
            let ds = to_dicke(&ps);
            let back = to_product(&ds);
            prop_assert!(back.matrix().max_abs_diff(ps.matrix()) <= 1e-14);
            prop_assert!((ds.matrix().trace().re - 1.0).abs() <= 1e-14);
            let (a, b) = (ps.rho().eigenvalues(), ds.rho().eigenvalues());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }
    }
}
