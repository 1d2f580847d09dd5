use crate::dynamics::ProductState;
use crate::error::{Error, Result};
use crate::qlinalg::{hermitian_eig, pauli, partial_trace, von_neumann_entropy, CMatrix, Subsystem};
use crate::scalar::Real;

/// Largest tolerated negative eigenvalue of `sqrt(rho) rho~ sqrt(rho)`.
const SPIN_FLIP_TOL: f64 = 1e-8;

/// `(sy (x) sy) rho* (sy (x) sy)`.
pub fn spin_flip<R: Real>(rho: &CMatrix<R>) -> CMatrix<R> {
    let y = pauli::y::<R>();
    let yy = y.kron(&y);
    yy * rho.conj() * yy
}

/// Square roots of the eigenvalues of `rho rho~`, descending.
///
/// These coincide with the eigenvalues of the Hermitian matrix
/// `sqrt(rho) rho~ sqrt(rho)`, which is diagonalized instead.
pub fn spin_flip_roots<R: Real>(rho: &ProductState<R>) -> Result<[R; 4]> {
    let m = rho.matrix();
    let sqrt_rho = hermitian_eig(m)?.map_spectrum(|v| v.max(R::zero()).sqrt());
    let herm = (sqrt_rho * spin_flip(m) * sqrt_rho).hermitian_part();
    let vals = hermitian_eig(&herm)?.values;
    let mut out = [R::zero(); 4];
    for (k, &v) in vals.iter().rev().enumerate() {
        if v < -R::lit(SPIN_FLIP_TOL) {
            return Err(Error::Numerical {
                context: "negative eigenvalue of the spin-flipped product",
                residual: v.as_f64(),
            });
        }
        out[k] = v.max(R::zero()).sqrt();
    }
    Ok(out)
}

/// Wootters concurrence.
pub fn concurrence<R: Real>(rho: &ProductState<R>) -> Result<R> {
    let s = spin_flip_roots(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).max(R::zero()).min(R::one()))
}

/// Quantum mutual information `S(A) + S(B) - S(AB)` in bits.
pub fn mutual_information<R: Real>(rho: &ProductState<R>) -> Result<R> {
    let r = rho.rho();
    let sa = von_neumann_entropy(&partial_trace(r, Subsystem::A)?)?;
    let sb = von_neumann_entropy(&partial_trace(r, Subsystem::B)?)?;
    let sab = von_neumann_entropy(r)?;
    Ok(sa + sb - sab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::fixtures::*;
    use crate::qlinalg::CMatrix;
    use crate::scalar::{cre, cx, Cx};
    use num_traits::Zero;
    use proptest::prelude::*;

    /// Characteristic polynomial coefficients of a 4x4 matrix by
    /// Faddeev-LeVerrier: `x^4 + c[1] x^3 + ... + c[4]`.
    fn char_poly(m: &CMatrix<f64>) -> [Cx<f64>; 5] {
        let mut c = [Cx::zero(); 5];
        c[0] = cre(1.0);
        let mut mk = CMatrix::zeros(4);
        for k in 1..=4 {
            mk = *m * (mk + CMatrix::identity(4).scale_c(c[k - 1]));
            c[k] = -mk.trace() / cre(k as f64);
        }
        c
    }

    /// All roots of a monic quartic by Durand-Kerner iteration.
    fn quartic_roots(c: &[Cx<f64>; 5]) -> [Cx<f64>; 4] {
        let p = |z: Cx<f64>| (((z + c[1]) * z + c[2]) * z + c[3]) * z + c[4];
        let seed = cx(0.4, 0.9);
        let mut z = [cre(1.0), seed, seed * seed, seed * seed * seed];
        for _ in 0..500 {
            for i in 0..4 {
                let mut den = cre(1.0);
                for j in 0..4 {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                z[i] = z[i] - p(z[i]) / den;
            }
        }
        z
    }

    /// Concurrence straight from the non-Hermitian `R = rho rho~`.
    fn concurrence_oracle(rho: &ProductState<f64>) -> f64 {
        let m = *rho.matrix() * spin_flip(rho.matrix());
        let mut l: Vec<f64> = quartic_roots(&char_poly(&m))
            .iter()
            .map(|z| z.re.max(0.0).sqrt())
            .collect();
        l.sort_by(|a, b| b.partial_cmp(a).unwrap());
        (l[0] - l[1] - l[2] - l[3]).max(0.0)
    }

    #[test]
    fn fixtures() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-9);
        assert!(concurrence(&ground()).unwrap().abs() < 1e-9);
        assert!((concurrence(&werner(0.5)).unwrap() - 0.25).abs() < 1e-9);
        // R has a triple root here, which limits the polynomial oracle to ~eps^(1/3).
        assert!((concurrence(&werner(0.5)).unwrap() - concurrence_oracle(&werner(0.5))).abs() < 1e-4);
        assert!((mutual_information(&bell()).unwrap() - 2.0).abs() < 1e-9);
        assert!((mutual_information(&classical()).unwrap() - 1.0).abs() < 1e-9);
        assert!(mutual_information(&ground()).unwrap().abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn concurrence_matches_characteristic_polynomial(seed in prop::collection::vec(-1.0f64..1.0, 32)) {
            let rho = random_state(&seed);
            let c = concurrence(&rho).unwrap();
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!((c - concurrence_oracle(&rho)).abs() <= 1e-7);
        }

        #[test]
        fn local_unitary_invariance(
            seed in prop::collection::vec(-1.0f64..1.0, 32),
            angles in prop::collection::vec(-3.0f64..3.0, 6),
        ) {
            let rho = random_state(&seed);
            let u = local_unitary(&angles[..3]).kron(&local_unitary(&angles[3..]));
            let rot = ProductState::new(rho.rho().conjugate_by(&u)).unwrap();
            prop_assert!((concurrence(&rho).unwrap() - concurrence(&rot).unwrap()).abs() <= 1e-9);
            let i = mutual_information(&rho).unwrap();
            prop_assert!((-1e-9..=2.0 + 1e-9).contains(&i));
        }

        #[test]
        fn product_states_have_no_correlation(
            s1 in prop::collection::vec(-1.0f64..1.0, 8),
            s2 in prop::collection::vec(-1.0f64..1.0, 8),
        ) {
            let rho = random_product(&s1, &s2);
            prop_assert!(concurrence(&rho).unwrap() <= 1e-9);
            prop_assert!(mutual_information(&rho).unwrap().abs() <= 1e-9);
        }
    }
}
