//! Phonon mode functions and the qubit-phonon coupling.
//!
//! Reduced units throughout: lengths in `xi`, wavenumbers in `1/xi`,
//! energies and couplings in `mu`.

use crate::error::Result;
use crate::scalar::{cx, Cx, Real};

use super::params::{bogoliubov_amplitudes, phi0, phi1, DerivedParams};
use super::quadrature::{integrate_panels, QuadConfig};

/// Source of the particle-like mode amplitude `u_k(x)`.
///
/// Only [`ModeProvider::u`] is required. The coupling and the pair
/// correlation have generic quadrature-based defaults; providers with extra
/// structure may override them with faster equivalents.
pub trait ModeProvider<R: Real>: Sync {
    /// `sqrt(L) u_k(x)`.
    fn u(&self, k: R, x: R) -> Cx<R>;

    /// Coupling `g(k)` of the qubit transition for a soliton at `x_i`.
    fn coupling(&self, k: R, x_i: R, dp: &DerivedParams<R>) -> Result<Cx<R>> {
        coupling_direct(self, k, x_i, dp)
    }

    /// `Re sum_{s = +-1} g1(s k) conj(g2(s k))` for solitons at `x1`, `x2`,
    /// with `k > 0`.
    fn pair_correlation(&self, k: R, x1: R, x2: R, dp: &DerivedParams<R>) -> Result<R> {
        let mut acc = R::zero();
        for kk in [k, -k] {
            acc = acc + (self.coupling(kk, x1, dp)? * self.coupling(kk, x2, dp)?.conj()).re;
        }
        Ok(acc)
    }
}

/// Homogeneous-condensate Bogoliubov amplitudes with plane-wave envelopes:
/// `u_k(x) = cosh(theta_k) e^{ikx} / sqrt(L)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlaneWave;

impl<R: Real> ModeProvider<R> for PlaneWave {
    fn u(&self, k: R, x: R) -> Cx<R> {
        let (c2, _) = bogoliubov_amplitudes(k);
        let ph = k * x;
        cx(ph.cos(), ph.sin()).scale(c2.sqrt())
    }

    /// The transition density is even about `x_i`, so the overlap is a real
    /// cosine transform times the phase `e^{i k x_i}`.
    fn coupling(&self, k: R, x_i: R, dp: &DerivedParams<R>) -> Result<Cx<R>> {
        let (c2, _) = bogoliubov_amplitudes(k);
        let amp = coupling_prefactor(dp) * c2.sqrt() * overlap_cos(k, dp)?;
        let ph = k * x_i;
        Ok(cx(ph.cos(), ph.sin()).scale(amp))
    }

    fn pair_correlation(&self, k: R, x1: R, x2: R, dp: &DerivedParams<R>) -> Result<R> {
        let (c2, _) = bogoliubov_amplitudes(k);
        let g = coupling_prefactor(dp) * overlap_cos(k, dp)?;
        Ok(R::lit(2.0) * c2 * g * g * (k * (x1 - x2)).cos())
    }
}

/// `(chi/g) (n0 xi)^{-1/2} (L/xi)^{-1/2}`: converts the dimensionless overlap
/// into a coupling in units of `mu`.
pub fn coupling_prefactor<R: Real>(dp: &DerivedParams<R>) -> R {
    dp.chi_over_g / (dp.n0_xi * dp.length_reduced).sqrt()
}

/// Half-width beyond which the transition density is below `1e-18`.
fn support<R: Real>(dp: &DerivedParams<R>) -> R {
    let a = dp.width_exp.max(R::lit(1e-3));
    R::lit(21.0) / a + R::one()
}

/// Panels no wider than a quarter period of `e^{ikx}` and no wider than 1.
fn panels<R: Real>(lo: R, hi: R, k: R) -> Vec<R> {
    let width = R::one().min(R::FRAC_PI_2() / k.abs().max(R::lit(1e-300)));
    let n = ((hi - lo) / width).ceil().to_usize().unwrap_or(1).max(1);
    (0..=n)
        .map(|i| lo + (hi - lo) * R::of_usize(i) / R::of_usize(n))
        .collect()
}

fn transition_density<R: Real>(y: R, dp: &DerivedParams<R>) -> R {
    phi0(y, dp) * phi1(y, dp) * y.tanh()
}

fn overlap_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-16,
        rel_tol: 1e-12,
        ..QuadConfig::default()
    }
}

/// `int phi0(y) phi1(y) tanh(y) cos(k y) dy` over the real line.
pub fn overlap_cos<R: Real>(k: R, dp: &DerivedParams<R>) -> Result<R> {
    let y = support(dp);
    let q = integrate_panels(
        |s: R| transition_density(s, dp) * (k * s).cos(),
        &panels(R::zero(), y, k),
        &overlap_cfg(),
    )?;
    Ok(R::lit(2.0) * q.value)
}

/// `g(k)` for a soliton at `x_i` by direct complex quadrature of
/// `sqrt(n0) chi int phi0 phi1 tanh(x - x_i) u_k(x) dx` in the lab frame.
pub fn coupling_direct<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    k: R,
    x_i: R,
    dp: &DerivedParams<R>,
) -> Result<Cx<R>> {
    let y = support(dp);
    let pts = panels(x_i - y, x_i + y, k);
    let cfg = overlap_cfg();
    let re = integrate_panels(
        |x: R| transition_density(x - x_i, dp) * provider.u(k, x).re,
        &pts,
        &cfg,
    )?;
    let im = integrate_panels(
        |x: R| transition_density(x - x_i, dp) * provider.u(k, x).im,
        &pts,
        &cfg,
    )?;
    Ok(cx(re.value, im.value).scale(coupling_prefactor(dp)))
}

/// Coupling of the qubit transition to the plane-wave Bogoliubov mode `k`
/// for a soliton at `x_i`, by direct quadrature.
pub fn coupling_g<R: Real>(k: R, x_i: R, dp: &DerivedParams<R>) -> Result<Cx<R>> {
    coupling_direct(&PlaneWave, k, x_i, dp)
}
