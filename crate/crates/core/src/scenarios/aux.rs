use std::sync::OnceLock;

use crate::becphys::RateSet;
use crate::dynamics::{dicke_diagonal, dicke_index::*, evolve_closed_form};
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::config::check_rates_closed_form;

/// Tolerance of the two matching identities.
pub const AUX_IDENTITY_TOL: f64 = 1e-10;

/// The symbols `delta` and `Z` of the entangled and mixed closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxScalars<R: Real> {
    pub delta: R,
    pub z: R,
}

/// `Z = cosh(Gt) - e^{-gt}`, `delta = (g^2 + G^2) Z - 2 g G sinh(Gt)`.
pub fn aux_scalars<R: Real>(r: &RateSet<R>, t: R) -> AuxScalars<R> {
    let (g, bg) = (r.gamma, r.big_gamma);
    let z = (bg * t).cosh() - (-g * t).exp();
    let delta = (g * g + bg * bg) * z - R::lit(2.0) * g * bg * (bg * t).sinh();
    AuxScalars { delta, z }
}

/// Residuals of the identities that define `Z` and `delta`, evaluated on the
/// cascade out of `|e><e|`:
///
/// `rho_ss - rho_aa = 2 e^{-gt} (2 g G Z - (g^2 + G^2) sinh(Gt)) / (g^2 - G^2)`,
/// `rho_ss + rho_aa = 2 e^{-gt} delta / (g^2 - G^2)`.
pub fn aux_identity_residuals<R: Real>(r: &RateSet<R>, t: R) -> Result<(R, R)> {
    check_rates_closed_form(r)?;
    let one = R::one();
    let z = R::zero();
    let rho = evolve_closed_form(&dicke_diagonal([one, z, z, z])?, r, t)?;
    let (ss, aa) = (rho.population(S), rho.population(A));
    let (g, bg) = (r.gamma, r.big_gamma);
    let aux = aux_scalars(r, t);
    let pref = R::lit(2.0) * (-g * t).exp() / (g * g - bg * bg);
    let diff = pref * (R::lit(2.0) * g * bg * aux.z - (g * g + bg * bg) * (bg * t).sinh());
    let sum = pref * aux.delta;
    Ok(((ss - aa - diff).abs(), (ss + aa - sum).abs()))
}

/// `Z` and `delta` at `(r, t)`, checked against the closed-form evolution.
pub fn derive_aux_scalars<R: Real>(r: &RateSet<R>, t: R) -> Result<AuxScalars<R>> {
    let (rd, rs) = aux_identity_residuals(r, t)?;
    let tol = R::lit(AUX_IDENTITY_TOL);
    if !(rd <= tol) {
        return Err(Error::DerivationFailure {
            identity: "rho_ss - rho_aa",
            residual: rd.as_f64(),
        });
    }
    if !(rs <= tol) {
        return Err(Error::DerivationFailure {
            identity: "rho_ss + rho_aa",
            residual: rs.as_f64(),
        });
    }
    Ok(aux_scalars(r, t))
}

/// Checks both identities on `Gamma/gamma` in `{-0.95, -0.9, ..., 0.95}` and
/// `gamma t` in `{0, 0.05, ..., 10}`; returns the largest residual.
pub fn verify_aux_grid() -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..=38 {
        let bg = -0.95 + 0.05 * i as f64;
        let r = RateSet { gamma: 1.0, big_gamma: bg, eta: 0.0 };
        for j in 0..=200 {
            let t = 0.05 * j as f64;
            derive_aux_scalars(&r, t)?;
            let (a, b) = aux_identity_residuals(&r, t)?;
            worst = worst.max(a).max(b);
        }
    }
    Ok(worst)
}

/// [`verify_aux_grid`] run once per process; the closed forms that use
/// `Z` and `delta` refuse to evaluate if it failed.
pub fn ensure_aux_verified() -> Result<()> {
    static CHECK: OnceLock<Result<f64>> = OnceLock::new();
    CHECK.get_or_init(verify_aux_grid).clone().map(|_| ())
}
