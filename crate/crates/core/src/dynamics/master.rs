use crate::becphys::RateSet;
use crate::error::{Error, Result};
use crate::qlinalg::CMatrix;
use crate::scalar::{cx, Real};

use super::closed_form::check_rates;
use super::state::ProductState;

/// Default RK4 step in units of `1/gamma`.
pub const DEFAULT_DT: f64 = 0.005;

/// Largest tolerated trace drift or population excursion during integration.
const INVARIANT_LIMIT: f64 = 1e-6;

/// Lowering operators `sigma_-^1 = s (x) I`, `sigma_-^2 = I (x) s` with
/// `s = |g><e|` and `|e> = |0>`.
fn lowering<R: Real>() -> [CMatrix<R>; 2] {
    let mut s = CMatrix::zeros(2);
    s[(1, 0)] = cx(R::one(), R::zero());
    let id = CMatrix::identity(2);
    [s.kron(&id), id.kron(&s)]
}

/// Time derivative of a product-basis density matrix (rotating frame).
///
/// `i eta [H_x, rho] + sum_ij G_ij (s_j rho s_i^+ - {s_i^+ s_j, rho}/2)` with
/// exchange Hamiltonian `H_x = s_1^+ s_2 + s_2^+ s_1`, `G_ii = gamma`,
/// `G_12 = G_21 = Gamma`. The sign of the exchange term makes `rho_sa`
/// rotate as `e^{+2 i eta t}`.
pub fn liouvillian_apply<R: Real>(rho: &CMatrix<R>, r: &RateSet<R>) -> CMatrix<R> {
    let low = lowering::<R>();
    let raise = [low[0].adjoint(), low[1].adjoint()];
    let hx = raise[0] * low[1] + raise[1] * low[0];
    let mut out = hx.commutator(rho).scale_c(cx(R::zero(), r.eta));
    let half = R::lit(0.5);
    for i in 0..2 {
        for j in 0..2 {
            let gij = if i == j { r.gamma } else { r.big_gamma };
            let jump = low[j] * *rho * raise[i];
            let anti = (raise[i] * low[j]).anticommutator(rho).scale(half);
            out = out + (jump - anti).scale(gij);
        }
    }
    out
}

fn rk4_step<R: Real>(rho: &CMatrix<R>, r: &RateSet<R>, h: R) -> CMatrix<R> {
    let half = R::lit(0.5);
    let k1 = liouvillian_apply(rho, r);
    let k2 = liouvillian_apply(&(*rho + k1.scale(h * half)), r);
    let k3 = liouvillian_apply(&(*rho + k2.scale(h * half)), r);
    let k4 = liouvillian_apply(&(*rho + k3.scale(h)), r);
    let incr = (k1 + k2.scale(R::lit(2.0)) + k3.scale(R::lit(2.0)) + k4).scale(h / R::lit(6.0));
    (*rho + incr).hermitian_part()
}

fn check_invariants<R: Real>(m: &CMatrix<R>, t: R) -> Result<()> {
    let limit = R::lit(INVARIANT_LIMIT);
    if !m.is_finite() {
        return Err(Error::StepSize {
            t: t.as_f64(),
            what: "non-finite entry",
            value: f64::NAN,
        });
    }
    let drift = (m.trace().re - R::one()).abs();
    if drift > limit {
        return Err(Error::StepSize {
            t: t.as_f64(),
            what: "trace drift",
            value: drift.as_f64(),
        });
    }
    for i in 0..m.dim() {
        let p = m[(i, i)].re;
        if p < -limit || p > R::one() + limit {
            return Err(Error::StepSize {
                t: t.as_f64(),
                what: "population outside [0, 1]",
                value: p.as_f64(),
            });
        }
    }
    Ok(())
}

/// Integrates from `t = 0` to `t_end` with classical RK4 and step `dt`
/// (the last step is shortened to land on `t_end`).
pub fn integrate_master<R: Real>(
    rho0: &ProductState<R>,
    r: &RateSet<R>,
    t_end: R,
    dt: R,
) -> Result<ProductState<R>> {
    Ok(integrate_master_sampled(rho0, r, &[t_end], dt)?
        .pop()
        .expect("one sample requested"))
}

/// RK4 integration returning the state at each of the non-decreasing
/// `samples`. Steps are never stretched: each sample is reached by full `dt`
/// steps plus one shortened step.
pub fn integrate_master_sampled<R: Real>(
    rho0: &ProductState<R>,
    r: &RateSet<R>,
    samples: &[R],
    dt: R,
) -> Result<Vec<ProductState<R>>> {
    check_rates(r)?;
    if !(dt > R::zero()) || !dt.is_finite() {
        return Err(Error::Domain {
            func: "integrate_master",
            arg: dt.as_f64(),
            reason: "dt must be finite and > 0",
        });
    }
    let mut out = Vec::with_capacity(samples.len());
    let mut rho = *rho0.matrix();
    let mut t = R::zero();
    // Step count since the last sample, to avoid accumulating t by addition.
    let mut t_anchor = R::zero();
    let mut n = 0usize;
    for &ts in samples {
        if !(ts >= t) || !ts.is_finite() {
            return Err(Error::Domain {
                func: "integrate_master",
                arg: ts.as_f64(),
                reason: "sample times must be finite, >= 0 and non-decreasing",
            });
        }
        loop {
            let next = t_anchor + R::of_usize(n + 1) * dt;
            if next > ts {
                break;
            }
            rho = rk4_step(&rho, r, dt);
            n += 1;
            t = next;
            check_invariants(&rho, t)?;
        }
        let mut sample = rho;
        if ts > t {
            sample = rk4_step(&rho, r, ts - t);
            check_invariants(&sample, ts)?;
        }
        out.push(ProductState::assume_valid(sample));
        // Continue from the sample point so the next segment restarts on it.
        rho = sample;
        t = ts;
        t_anchor = ts;
        n = 0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::closed_form::evolve_closed_form;
    use crate::dynamics::state::{to_dicke, to_product};
    use crate::qlinalg::DensityMatrix;
    use crate::scalar::cre;
    use proptest::prelude::*;

    fn rs(g: f64, bg: f64, eta: f64) -> RateSet<f64> {
        RateSet {
            gamma: g,
            big_gamma: bg,
            eta,
        }
    }

    fn product_diag(p: [f64; 4]) -> ProductState<f64> {
        ProductState::from_matrix(CMatrix::diag(&p)).unwrap()
    }

    #[test]
    fn ground_state_is_stationary() {
        let d = liouvillian_apply(product_diag([0.0, 0.0, 0.0, 1.0]).matrix(), &rs(1.0, 0.5, 1.3));
        assert!(d.max_abs() == 0.0);
    }

    #[test]
    fn outflow_from_doubly_excited() {
        let d = liouvillian_apply(product_diag([1.0, 0.0, 0.0, 0.0]).matrix(), &rs(0.7, 0.3, 1.0));
        assert!((d[(0, 0)].re + 2.0 * 0.7).abs() < 1e-15);
    }

    #[test]
    fn independent_decay() {
        let rho0 = product_diag([0.0, 1.0, 0.0, 0.0]);
        let out = integrate_master(&rho0, &rs(1.0, 0.0, 0.0), 2.0, DEFAULT_DT).unwrap();
        let p_excited_1 = out.population(0) + out.population(1);
        assert!((p_excited_1 - (-2.0f64).exp()).abs() < 1e-8);
        assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn relaxes_to_ground_state() {
        let rho0 = product_diag([1.0, 0.0, 0.0, 0.0]);
        let out = integrate_master(&rho0, &rs(1.0, 0.0, 0.5), 10.0, 0.01).unwrap();
        assert!((out.population(3) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn sampled_output_matches_single_runs() {
        let rho0 = product_diag([0.2, 0.5, 0.0, 0.3]);
        let r = rs(1.0, -0.4, 1.0);
        let samples = [0.0, 0.013, 0.5, 0.5, 1.7];
        let many = integrate_master_sampled(&rho0, &r, &samples, DEFAULT_DT).unwrap();
        for (s, st) in samples.iter().zip(&many) {
            let single = integrate_master(&rho0, &r, *s, DEFAULT_DT).unwrap();
            assert!(single.matrix().max_abs_diff(st.matrix()) < 1e-12);
        }
        assert!(integrate_master_sampled(&rho0, &r, &[1.0, 0.5], DEFAULT_DT).is_err());
    }

    #[test]
    fn huge_step_is_reported() {
        let rho0 = product_diag([1.0, 0.0, 0.0, 0.0]);
        let r = integrate_master(&rho0, &rs(1.0, 0.0, 0.0), 50.0, 5.0);
        assert!(matches!(r, Err(Error::StepSize { .. })));
    }

    #[test]
    fn matches_closed_form_on_mixed_dicke_state() {
        let r = rs(1.0, 0.4, 0.8);
        let h = 0.5f64;
        let mut m = CMatrix::diag(&[0.25, 0.3, 0.2, 0.25]);
        m[(1, 2)] = cx(0.1, 0.05);
        m[(2, 1)] = cx(0.1, -0.05);
        m[(0, 3)] = cre(0.1 * h);
        m[(3, 0)] = cre(0.1 * h);
        let ds = crate::dynamics::DickeState::new(DensityMatrix::new(m).unwrap()).unwrap();
        let closed = evolve_closed_form(&ds, &r, 1.7).unwrap();
        let numeric = integrate_master(&to_product(&ds), &r, 1.7, DEFAULT_DT).unwrap();
        assert!(to_dicke(&numeric).matrix().max_abs_diff(closed.matrix()) < 1e-8);
    }

    proptest! {
        #[test]
        fn generator_is_traceless_and_hermitian(
            seed in prop::collection::vec(-1.0f64..1.0, 32),
            bg in -1.0f64..1.0,
            eta in -2.0f64..2.0,
        ) {
            let g = CMatrix::from_fn(4, |i, j| cx(seed[4 * i + j], seed[16 + 4 * i + j]));
            let m = g * g.adjoint();
            let rho = m.scale(1.0 / m.trace().re);
            let d = liouvillian_apply(&rho, &rs(1.0, bg, eta));
            prop_assert!(d.trace().norm() <= 1e-14);
            prop_assert!(d.hermiticity_residual() <= 1e-14);
        }
    }
}
