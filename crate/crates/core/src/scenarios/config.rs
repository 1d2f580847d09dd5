use std::fmt;
use std::str::FromStr;

use crate::becphys::RateSet;
use crate::dynamics::{dicke_diagonal, dicke_pure, DickeState};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// The three initial states studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    /// `(|s> + |a>)/sqrt2`, i.e. `|e1 g2>`.
    Superposition,
    /// `sqrt(alpha)|e> + sqrt(1 - alpha)|g>`.
    Entangled,
    /// `diag(alpha, 2, 0, 1 - alpha)/3` in the Dicke basis.
    Mixed,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [Self::Superposition, Self::Entangled, Self::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Self::Superposition => "superposition",
            Self::Entangled => "entangled",
            Self::Mixed => "mixed",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "superposition" | "a" => Ok(Self::Superposition),
            "entangled" | "b" => Ok(Self::Entangled),
            "mixed" | "c" => Ok(Self::Mixed),
            other => Err(Error::Config(format!(
                "unknown scenario '{other}' (expected superposition, entangled or mixed)"
            ))),
        }
    }
}

/// A scenario run: initial state, rates and sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<R: Real> {
    pub kind: ScenarioKind,
    /// Weight `alpha` of the entangled and mixed states; ignored for the
    /// superposition.
    pub state_alpha: R,
    pub rates: RateSet<R>,
    pub t_grid: Vec<R>,
}

impl<R: Real> ScenarioConfig<R> {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.state_alpha)?;
        check_rates_closed_form(&self.rates)?;
        if self.t_grid.is_empty() {
            return Err(Error::Config("time grid is empty".into()));
        }
        if !self.t_grid.iter().all(|t| t.is_finite() && *t >= R::zero()) {
            return Err(Error::Config("times must be finite and >= 0".into()));
        }
        if self.t_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("time grid must be strictly increasing".into()));
        }
        Ok(())
    }

    pub fn initial_state(&self) -> Result<DickeState<R>> {
        initial_state(self.kind, self.state_alpha)
    }
}

/// Uniform grid `0, dt, 2 dt, ...` up to and including `t_max` (to within
/// half a step).
pub fn uniform_grid<R: Real>(t_max: R, dt: R) -> Result<Vec<R>> {
    if !(t_max > R::zero()) || !(dt > R::zero()) || !t_max.is_finite() || !dt.is_finite() {
        return Err(Error::Config(format!(
            "t_max and dt must be finite and > 0 (got {t_max}, {dt})"
        )));
    }
    let n = (t_max / dt + R::lit(0.5)).floor().to_usize().unwrap_or(0);
    Ok((0..=n).map(|i| R::of_usize(i) * dt).collect())
}

pub(crate) fn check_alpha<R: Real>(alpha: R) -> Result<()> {
    if alpha >= R::zero() && alpha <= R::one() {
        Ok(())
    } else {
        Err(Error::Config(format!("state alpha must lie in [0, 1] (got {alpha})")))
    }
}

pub(crate) fn check_rates_closed_form<R: Real>(r: &RateSet<R>) -> Result<()> {
    if !(r.gamma > R::zero()) || !r.gamma.is_finite() || !r.big_gamma.is_finite() || !r.eta.is_finite() {
        return Err(Error::Config(format!(
            "rates must be finite with gamma > 0 (gamma = {}, Gamma = {}, eta = {})",
            r.gamma, r.big_gamma, r.eta
        )));
    }
    if !(r.big_gamma.abs() < r.gamma) {
        return Err(Error::UnsupportedRegime {
            gamma: r.gamma.as_f64(),
            big_gamma: r.big_gamma.as_f64(),
        });
    }
    Ok(())
}

/// Initial Dicke-basis state of a scenario.
pub fn initial_state<R: Real>(kind: ScenarioKind, alpha: R) -> Result<DickeState<R>> {
    let z = R::zero();
    match kind {
        ScenarioKind::Superposition => {
            let h = R::FRAC_1_SQRT_2();
            dicke_pure([z, h, h, z])
        }
        ScenarioKind::Entangled => {
            check_alpha(alpha)?;
            dicke_pure([alpha.sqrt(), z, z, (R::one() - alpha).sqrt()])
        }
        ScenarioKind::Mixed => {
            check_alpha(alpha)?;
            let third = R::one() / R::lit(3.0);
            dicke_diagonal([alpha * third, R::lit(2.0) * third, z, (R::one() - alpha) * third])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::to_product;
    use crate::qlinalg::CMatrix;

    #[test]
    fn superposition_is_e1_g2() {
        let ps = to_product(&initial_state::<f64>(ScenarioKind::Superposition, 0.0).unwrap());
        let want = CMatrix::diag(&[0.0, 1.0, 0.0, 0.0]);
        assert!(ps.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn endpoints() {
        let g = initial_state::<f64>(ScenarioKind::Entangled, 0.0).unwrap();
        assert!(g.matrix().max_abs_diff(&CMatrix::diag(&[0.0, 0.0, 0.0, 1.0])) < 1e-15);
        let m = initial_state::<f64>(ScenarioKind::Mixed, 1.0).unwrap();
        let want = CMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0, 0.0, 0.0]);
        assert!(m.matrix().max_abs_diff(&want) < 1e-15);
        assert!((m.matrix().trace().re - 1.0).abs() < 1e-15);
        assert!(initial_state::<f64>(ScenarioKind::Mixed, 1.2).is_err());
    }

    #[test]
    fn config_validation() {
        let rates = RateSet { gamma: 1.0, big_gamma: 0.3, eta: 0.7 };
        let mut cfg = ScenarioConfig { kind: ScenarioKind::Entangled, state_alpha: 0.5, rates, t_grid: vec![0.0, 0.5] };
        assert!(cfg.validate().is_ok());
        cfg.t_grid = vec![0.5, 0.5];
        assert!(cfg.validate().is_err());
        cfg.t_grid = vec![];
        assert!(cfg.validate().is_err());
        cfg.t_grid = vec![-1.0];
        assert!(cfg.validate().is_err());
        cfg.t_grid = vec![1.0];
        cfg.rates.big_gamma = 1.0;
        assert!(matches!(cfg.validate(), Err(Error::UnsupportedRegime { .. })));
        assert_eq!("Mixed".parse::<ScenarioKind>().unwrap(), ScenarioKind::Mixed);
        assert!("bogus".parse::<ScenarioKind>().is_err());
    }

    #[test]
    fn grid_includes_end() {
        let g = uniform_grid(1.0f64, 0.25).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[4] - 1.0).abs() < 1e-15);
        assert!(uniform_grid(0.0f64, 0.1).is_err());
    }
}
