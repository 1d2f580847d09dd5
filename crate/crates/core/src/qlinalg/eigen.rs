use num_traits::{One, Zero};

use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cre, Cx, Real};

/// Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 64;

/// Spectral decomposition `M = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct EigenSystem<R: Real> {
    /// Ascending.
    pub values: Vec<R>,
    /// Orthonormal eigenvectors as columns, phase-normalized.
    pub vectors: CMatrix<R>,
}

impl<R: Real> EigenSystem<R> {
    pub fn vector(&self, k: usize) -> Vec<Cx<R>> {
        self.vectors.column(k)
    }

    pub fn reconstruct(&self) -> CMatrix<R> {
        let d = CMatrix::diag(&self.values);
        self.vectors * d * self.vectors.adjoint()
    }

    /// Applies `f` to the spectrum: `V f(D) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(R) -> R) -> CMatrix<R> {
        let vals: Vec<R> = self.values.iter().map(|&v| f(v)).collect();
        self.vectors * CMatrix::diag(&vals) * self.vectors.adjoint()
    }
}

/// Eigen-decomposition of a Hermitian matrix of dimension <= 4 by cyclic
/// complex Jacobi rotations.
///
/// Eigenvalues come back ascending; each eigenvector has its first component
/// of magnitude > 1e-12 made real and positive, so identical input gives
/// bit-identical output.
pub fn hermitian_eig<R: Real>(m: &CMatrix<R>) -> Result<EigenSystem<R>> {
    let asym = m.hermiticity_residual();
    let scale = R::one().max(m.max_abs());
    if !m.is_finite() || asym > R::lit(HERMITIAN_TOL) * scale {
        return Err(Error::NotHermitian {
            max_asymmetry: asym.as_f64(),
        });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::<R>::identity(n);

    let tiny = R::epsilon() * R::epsilon() * scale * scale;
    for _ in 0..MAX_SWEEPS {
        let off: R = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= tiny {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite"));
    let values: Vec<R> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let phase = canonical_phase(&v.column(src));
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)] * phase;
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only (ascending).
pub fn hermitian_eigenvalues<R: Real>(m: &CMatrix<R>) -> Result<Vec<R>> {
    hermitian_eig(m).map(|e| e.values)
}

/// Unit phase that makes the first component above 1e-12 real positive.
fn canonical_phase<R: Real>(col: &[Cx<R>]) -> Cx<R> {
    let thr = R::lit(1e-12);
    col.iter()
        .find(|z| z.norm() > thr)
        .map(|z| z.conj() / z.norm())
        .unwrap_or_else(Cx::one)
}

/// One Jacobi rotation zeroing `a[p][q]`. `J = P R P^dagger` where `P`
/// removes the phase of `a[p][q]` and `R` is a real Givens rotation.
fn rotate<R: Real>(a: &mut CMatrix<R>, v: &mut CMatrix<R>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == R::zero() {
        return;
    }
    let e = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (R::lit(2.0) * mag);
    let t = if theta == R::zero() {
        R::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + R::one()).sqrt())
    };
    let c = R::one() / (t * t + R::one()).sqrt();
    let s = t * c;

    let n = a.dim();
    // J: J_pp = c, J_qq = c, J_pq = s e, J_qp = -s conj(e)
    let jpp = cre(c);
    let jqq = cre(c);
    let jpq = e * s;
    let jqp = -(e.conj() * s);

    // A <- A J (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A <- J^dagger A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Cx::zero();
    a[(q, p)] = Cx::zero();
    a[(p, p)] = cre(a[(p, p)].re);
    a[(q, q)] = cre(a[(q, q)].re);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use proptest::prelude::*;

    fn random_hermitian(seed: &[f64; 16]) -> CMatrix<f64> {
        let mut m = CMatrix::zeros(4);
        let mut k = 0;
        for i in 0..4 {
            m[(i, i)] = cre(seed[k]);
            k += 1;
            for j in (i + 1)..4 {
                let z = cx(seed[k], seed[k + 1]);
                k += 2;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = hermitian_eig(&CMatrix::<f64>::identity(2)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
        assert_eq!(e.vectors, CMatrix::identity(2));
    }

    #[test]
    fn pauli_z_spectrum() {
        let e = hermitian_eig(&super::super::pauli::z::<f64>()).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::<f64>::identity(2);
        m[(0, 1)] = cre(0.5);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian { max_asymmetry }) => assert!((max_asymmetry - 0.5).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_convention_is_applied() {
        let m = CMatrix::<f64>::from_rows(&[&[cre(1.0), cx(0.0, 1.0)], &[cx(0.0, -1.0), cre(1.0)]]).unwrap();
        let e = hermitian_eig(&m).unwrap();
        for k in 0..2 {
            let first = e.vectors[(0, k)];
            assert!(first.im.abs() < 1e-15 && first.re > 0.0);
        }
        assert!((e.values[0] - 0.0).abs() < 1e-14 && (e.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn works_in_single_precision() {
        let m = CMatrix::<f32>::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-6 && (e.values[1] - 3.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn reconstructs_random_hermitian(seed in prop::array::uniform16(-1.0f64..1.0)) {
            let m = random_hermitian(&seed);
            let e = hermitian_eig(&m).unwrap();
            prop_assert!(e.reconstruct().max_abs_diff(&m) <= 1e-10);
            let vtv = e.vectors.adjoint() * e.vectors;
            prop_assert!(vtv.max_abs_diff(&CMatrix::identity(4)) <= 1e-10);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            let again = hermitian_eig(&m).unwrap();
            prop_assert_eq!(again.values, e.values);
        }
    }
}
