use rayon::prelude::*;

use crate::dynamics::ProductState;
use crate::error::{Error, Result};
use crate::qlinalg::{linear_entropy, partial_trace, von_neumann_entropy, CMatrix, Subsystem};
use crate::scalar::{cx, xlog2x, Cx, Real};

use super::channel::{extract_channel, l_matrix};
use super::measures::mutual_information;

/// Prefactor multiplying `S2(rho_B) lambda_max(L^T L)`. One gives `C2 = 1`
/// for a Bell state; the alternative `4/d` (= 2 for qubits) does not.
pub const C2_PREFACTOR: f64 = 1.0;

/// `4/d` at `d = 2`, available through [`classical_correlation_c2_with`].
pub const C2_PREFACTOR_FOUR_OVER_D: f64 = 2.0;

/// Discord magnitudes below this are reported as exactly zero.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// Default measurement-grid resolution per Bloch angle.
pub const DEFAULT_GRID_N: usize = 64;

/// Window-halving refinement steps after the grid search.
pub const REFINEMENT_STEPS: usize = 20;

/// Renyi-2 classical correlation `C2 = S2(rho_B) lambda_max(L^T L)`.
pub fn classical_correlation_c2<R: Real>(rho: &ProductState<R>) -> Result<R> {
    classical_correlation_c2_with(rho, R::lit(C2_PREFACTOR))
}

pub fn classical_correlation_c2_with<R: Real>(rho: &ProductState<R>, prefactor: R) -> Result<R> {
    let ex = match extract_channel(rho) {
        Ok(ex) => ex,
        Err(Error::DegenerateReducedState { .. }) => return Ok(R::zero()),
        Err(e) => return Err(e),
    };
    let s2 = linear_entropy(&ex.reduced_b);
    let lam = l_matrix(&ex.channel)?.lambda_max()?;
    Ok((prefactor * s2 * lam).max(R::zero()))
}

fn clamp<R: Real>(q: R) -> R {
    if q.abs() < R::lit(DISCORD_CLAMP) {
        R::zero()
    } else {
        q
    }
}

/// `I(rho) - C2(rho)`: von Neumann mutual information minus the Renyi-2
/// classical correlation. Not sign-definite.
pub fn quantum_discord<R: Real>(rho: &ProductState<R>) -> Result<R> {
    Ok(clamp(mutual_information(rho)? - classical_correlation_c2(rho)?))
}

/// Entropy in bits of a 2x2 Hermitian unit-trace matrix.
fn qubit_entropy<R: Real>(m: &CMatrix<R>) -> R {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let off = m[(0, 1)].norm();
    let half = R::lit(0.5);
    let mean = half * (a + d);
    let rad = (half * half * (a - d) * (a - d) + off * off).sqrt();
    let (l1, l2) = (mean + rad, mean - rad);
    -(xlog2x(l1.max(R::zero())) + xlog2x(l2.max(R::zero())))
}

/// `S(rho_A) - sum_k p_k S(rho_A|k)` for the projective measurement on B
/// along Bloch direction `(theta, phi)`.
fn measured_information<R: Real>(rho: &CMatrix<R>, s_a: R, theta: R, phi: R) -> R {
    let half = R::lit(0.5) * theta;
    let v0 = [cx(half.cos(), R::zero()), cx(phi.cos(), phi.sin()).scale(half.sin())];
    let v1 = [cx(-half.sin(), R::zero()), cx(phi.cos(), phi.sin()).scale(half.cos())];
    let mut cond = R::zero();
    for v in [v0, v1] {
        // rho_A|k (unnormalized) = <v|_B rho |v>_B
        let mut m = CMatrix::zeros(2);
        for a in 0..2 {
            for ap in 0..2 {
                let mut acc = Cx::new(R::zero(), R::zero());
                for b in 0..2 {
                    for bp in 0..2 {
                        acc = acc + v[b].conj() * rho[(2 * a + b, 2 * ap + bp)] * v[bp];
                    }
                }
                m[(a, ap)] = acc;
            }
        }
        let p = m.trace().re;
        if p > R::lit(1e-15) {
            cond = cond + p * qubit_entropy(&m.scale(R::one() / p));
        }
    }
    s_a - cond
}

/// Von Neumann classical correlation maximized over projective measurements
/// on B: a `grid_n x grid_n` scan of `(theta, phi)` followed by
/// [`REFINEMENT_STEPS`] rounds of local search with a halving window.
///
/// The result is attained by an explicit measurement and hence a lower
/// bound on the supremum.
pub fn vn_classical_correlation<R: Real>(rho: &ProductState<R>, grid_n: usize) -> Result<R> {
    let n = grid_n.max(DEFAULT_GRID_N);
    let m = *rho.matrix();
    let s_a = von_neumann_entropy(&partial_trace(rho.rho(), Subsystem::A)?)?;
    let pi = R::PI();
    let dth = pi / R::of_usize(n - 1);
    let dph = R::TAU() / R::of_usize(n);
    let values: Vec<R> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            measured_information(&m, s_a, R::of_usize(i) * dth, R::of_usize(j) * dph)
        })
        .collect();
    // Deterministic arg-max: first index wins ties.
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    let mut th = R::of_usize(best / n) * dth;
    let mut ph = R::of_usize(best % n) * dph;
    let mut val = values[best];
    let (mut sth, mut sph) = (dth, dph);
    for _ in 0..REFINEMENT_STEPS {
        loop {
            let mut moved = false;
            for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let t = th + R::lit(a as f64) * sth;
                let p = ph + R::lit(b as f64) * sph;
                let v = measured_information(&m, s_a, t, p);
                if v > val {
                    (th, ph, val, moved) = (t, p, v, true);
                }
            }
            if !moved {
                break;
            }
        }
        sth = sth * R::lit(0.5);
        sph = sph * R::lit(0.5);
    }
    Ok(val.max(R::zero()))
}

/// `I(rho) - J_vN(rho)` with the grid-optimized von Neumann classical
/// correlation.
pub fn vn_discord<R: Real>(rho: &ProductState<R>) -> Result<R> {
    let i = mutual_information(rho)?;
    Ok(clamp(i - vn_classical_correlation(rho, DEFAULT_GRID_N)?))
}
