//! Shared test states.

use crate::dynamics::ProductState;
use crate::qlinalg::{pauli, CMatrix, DensityMatrix};
use crate::scalar::{cre, cx};

pub fn bell() -> ProductState<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ProductState::new(DensityMatrix::pure(&[cre(s), cre(0.0), cre(0.0), cre(s)]).unwrap()).unwrap()
}

pub fn ground() -> ProductState<f64> {
    ProductState::from_matrix(CMatrix::diag(&[0.0, 0.0, 0.0, 1.0])).unwrap()
}

pub fn classical() -> ProductState<f64> {
    ProductState::from_matrix(CMatrix::diag(&[0.5, 0.0, 0.0, 0.5])).unwrap()
}

pub fn werner(p: f64) -> ProductState<f64> {
    let m = bell().matrix().scale(p) + CMatrix::identity(4).scale((1.0 - p) / 4.0);
    ProductState::from_matrix(m).unwrap()
}

pub fn random_state(seed: &[f64]) -> ProductState<f64> {
    let g = CMatrix::from_fn(4, |i, j| cx(seed[4 * i + j], seed[16 + 4 * i + j]));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    ProductState::from_matrix(m.scale(1.0 / tr)).unwrap()
}

fn random_qubit(seed: &[f64]) -> DensityMatrix<f64> {
    let g = CMatrix::from_fn(2, |i, j| cx(seed[2 * i + j], seed[4 + 2 * i + j]));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr)).unwrap()
}

pub fn random_product(s1: &[f64], s2: &[f64]) -> ProductState<f64> {
    ProductState::new(random_qubit(s1).tensor(&random_qubit(s2))).unwrap()
}

/// `exp(-i n.sigma)` for `n = angles`.
pub fn local_unitary(angles: &[f64]) -> CMatrix<f64> {
    let norm = angles.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return CMatrix::identity(2);
    }
    let [x, y, z] = pauli::all::<f64>();
    let gen = x.scale(angles[0] / norm) + y.scale(angles[1] / norm) + z.scale(angles[2] / norm);
    CMatrix::identity(2).scale(norm.cos()) + gen.scale_c(cx(0.0, -norm.sin()))
}
