//! Dense complex linear algebra for qubit and two-qubit operators.

mod cmatrix;
mod density;
mod eigen;

pub use cmatrix::{pauli, CMatrix};
pub use density::{
    linear_entropy, partial_trace, von_neumann_entropy, DensityMatrix, Subsystem, DEFAULT_TOL,
};
pub use eigen::{hermitian_eig, hermitian_eigenvalues, EigenSystem, HERMITIAN_TOL};
