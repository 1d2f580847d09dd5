use crate::becphys::RateSet;
use crate::error::{Error, Result};
use crate::qlinalg::CMatrix;
use crate::scalar::{cre, cx, Real};

use super::state::{dicke_index::*, DickeState, TwoQubit};

/// Below this magnitude an unlisted coherence counts as zero.
pub const COHERENCE_TOL: f64 = 1e-12;

/// Coherences with no closed-form evolution.
const UNLISTED: [(usize, usize, &str); 4] = [
    (E, S, "rho_es"),
    (E, A, "rho_ea"),
    (S, G, "rho_sg"),
    (A, G, "rho_ag"),
];

pub(crate) fn check_rates<R: Real>(r: &RateSet<R>) -> Result<()> {
    let ok = r.gamma > R::zero() && r.gamma.is_finite() && r.big_gamma.is_finite() && r.eta.is_finite();
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "rates must be finite with gamma > 0 (gamma = {}, Gamma = {}, eta = {})",
            r.gamma, r.big_gamma, r.eta
        )))
    }
}

/// Rejects initial states that the closed form cannot evolve.
pub fn check_closed_form_support<R: Real>(rho0: &DickeState<R>, r: &RateSet<R>) -> Result<()> {
    check_rates(r)?;
    if !(r.big_gamma.abs() < r.gamma) {
        return Err(Error::UnsupportedRegime {
            gamma: r.gamma.as_f64(),
            big_gamma: r.big_gamma.as_f64(),
        });
    }
    let m = rho0.matrix();
    for (i, j, name) in UNLISTED {
        let mag = m[(i, j)].norm();
        if mag > R::lit(COHERENCE_TOL) {
            return Err(Error::UnsupportedCoherence {
                element: name,
                magnitude: mag.as_f64(),
            });
        }
    }
    Ok(())
}

/// Evolves a Dicke-basis state to time `t` (rotating frame).
///
/// Populations of `|s>` and `|a>` decay at `gamma +- Gamma` and are fed by
/// the cascade out of `|e>`; `rho_eg` decays at `gamma`; `rho_sa` decays at
/// `gamma` while rotating at `2 eta`. Coherences between states differing by
/// one excitation must vanish initially (they stay zero).
pub fn evolve_closed_form<R: Real>(rho0: &DickeState<R>, r: &RateSet<R>, t: R) -> Result<DickeState<R>> {
    check_closed_form_support(rho0, r)?;
    if !(t >= R::zero()) || !t.is_finite() {
        return Err(Error::Domain {
            func: "evolve_closed_form",
            arg: t.as_f64(),
            reason: "time must be finite and >= 0",
        });
    }
    let m0 = rho0.matrix();
    let (g, bg, eta) = (r.gamma, r.big_gamma, r.eta);
    let ee0 = m0[(E, E)].re;
    let e2 = (-(g + g) * t).exp();
    let e_plus = (-(g + bg) * t).exp();
    let e_minus = (-(g - bg) * t).exp();
    let e1 = (-g * t).exp();

    let ee = e2 * ee0;
    let ss = e_plus * m0[(S, S)].re + (g + bg) / (g - bg) * (e_plus - e2) * ee0;
    let aa = e_minus * m0[(A, A)].re + (g - bg) / (g + bg) * (e_minus - e2) * ee0;
    let gg = R::one() - ee - ss - aa;
    let eg = m0[(E, G)].scale(e1);
    let phase = R::lit(2.0) * eta * t;
    let sa = m0[(S, A)] * cx(phase.cos(), phase.sin()).scale(e1);

    let mut m = CMatrix::zeros(4);
    m[(E, E)] = cre(ee);
    m[(S, S)] = cre(ss);
    m[(A, A)] = cre(aa);
    m[(G, G)] = cre(gg);
    m[(E, G)] = eg;
    m[(G, E)] = eg.conj();
    m[(S, A)] = sa;
    m[(A, S)] = sa.conj();
    DickeState::from_matrix(m)
}

/// Restores the lab-frame phases `e^{-i (E_j - E_k) t}` for the qubit
/// Hamiltonian `(omega0/2)(sz1 + sz2)`, i.e. energies `(omega0, 0, 0, -omega0)`.
pub fn to_lab_frame<R: Real>(ds: &DickeState<R>, omega0: R, t: R) -> DickeState<R> {
    let energy = [omega0, R::zero(), R::zero(), -omega0];
    let m = ds.matrix();
    let out = CMatrix::from_fn(4, |j, k| {
        let ph = -(energy[j] - energy[k]) * t;
        m[(j, k)] * cx(ph.cos(), ph.sin())
    });
    TwoQubit::assume_valid(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::state::{dicke_diagonal, dicke_pure};

    fn rs(g: f64, bg: f64, eta: f64) -> RateSet<f64> {
        RateSet {
            gamma: g,
            big_gamma: bg,
            eta,
        }
    }

    #[test]
    fn identity_at_zero_time() {
        let h = 0.5f64.sqrt();
        let rho0 = dicke_pure([0.0, h, h, 0.0]).unwrap();
        let out = evolve_closed_form(&rho0, &rs(1.0, 0.4, 0.8), 0.0).unwrap();
        assert!(out.matrix().max_abs_diff(rho0.matrix()) < 1e-15);
    }

    #[test]
    fn cascade_from_doubly_excited() {
        let rho0 = dicke_diagonal([1.0, 0.0, 0.0, 0.0]).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let out = evolve_closed_form(&rho0, &rs(1.0, 0.0, 0.0), t).unwrap();
            let (e1, e2) = ((-t).exp(), (-2.0 * t).exp());
            assert!((out.population(E) - e2).abs() < 1e-15);
            assert!((out.population(S) - (e1 - e2)).abs() < 1e-15);
            assert!((out.population(A) - (e1 - e2)).abs() < 1e-15);
        }
    }

    #[test]
    fn decay_rate_dichotomy() {
        let r = rs(1.0, -0.6, 0.3);
        let s = evolve_closed_form(&dicke_diagonal([0.0, 1.0, 0.0, 0.0]).unwrap(), &r, 1.3).unwrap();
        let a = evolve_closed_form(&dicke_diagonal([0.0, 0.0, 1.0, 0.0]).unwrap(), &r, 1.3).unwrap();
        assert!((s.population(S) - (-0.4f64 * 1.3).exp()).abs() < 1e-15);
        assert!((a.population(A) - (-1.6f64 * 1.3).exp()).abs() < 1e-15);
    }

    #[test]
    fn exchange_phase_advances_at_twice_eta() {
        let h = 0.5f64.sqrt();
        let rho0 = dicke_pure([0.0, h, h, 0.0]).unwrap();
        let (eta, t) = (0.7, 0.9);
        let out = evolve_closed_form(&rho0, &rs(1.0, 0.2, eta), t).unwrap();
        let dphi = out.matrix()[(S, A)].arg() - rho0.matrix()[(S, A)].arg();
        assert!((dphi - 2.0 * eta * t).abs() < 1e-12);
    }

    #[test]
    fn regime_and_coherence_errors() {
        let rho0 = dicke_diagonal([0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            evolve_closed_form(&rho0, &rs(1.0, 1.0, 0.0), 1.0),
            Err(Error::UnsupportedRegime { .. })
        ));
        let bad = dicke_pure([0.6, 0.8, 0.0, 0.0]).unwrap();
        match evolve_closed_form(&bad, &rs(1.0, 0.2, 0.0), 1.0) {
            Err(Error::UnsupportedCoherence { element, .. }) => assert_eq!(element, "rho_es"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lab_frame_phases() {
        let rho0 = dicke_pure([0.6, 0.0, 0.0, 0.8]).unwrap();
        let lab = to_lab_frame(&rho0, 2.0, 0.25);
        let expect = rho0.matrix()[(E, G)] * cx((-1.0f64).cos(), (-1.0f64).sin());
        assert!((lab.matrix()[(E, G)] - expect).norm() < 1e-15);
    }
}
