use rayon::prelude::*;

use crate::becphys::RateSet;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::config::{check_alpha, check_rates_closed_form, uniform_grid, ScenarioKind};
use super::closed_correlations;

/// `Q` below this counts as dead.
pub const ZERO_THRESHOLD: f64 = 1e-6;

/// Default scan step in units of `1/gamma`.
pub const SCAN_DT: f64 = 0.005;

/// Largest allowed scan step in units of `1/gamma`.
pub const MAX_SCAN_DT: f64 = 0.01;

/// A maximal interval with `Q < threshold` enclosed by intervals with
/// `Q >= threshold`. Times are linear interpolations of the crossings.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DeathWindow {
    pub death: f64,
    pub revival: f64,
}

impl DeathWindow {
    /// Dark period, revival minus death.
    pub fn duration(&self) -> f64 {
        self.revival - self.death
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AlphaScan {
    pub alpha: f64,
    pub windows: Vec<DeathWindow>,
}

impl AlphaScan {
    pub fn first_window(&self) -> Option<&DeathWindow> {
        self.windows.first()
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ScanResult {
    pub rows: Vec<AlphaScan>,
    /// Smallest scanned alpha with at least one death window.
    pub threshold_alpha: Option<f64>,
}

fn crossing(t0: f64, q0: f64, t1: f64, q1: f64, level: f64) -> f64 {
    if q1 == q0 {
        return t1;
    }
    t0 + (level - q0) / (q1 - q0) * (t1 - t0)
}

/// Death windows of a sampled `Q(t)`.
pub fn death_windows(ts: &[f64], qs: &[f64], threshold: f64) -> Vec<DeathWindow> {
    let mut out = Vec::new();
    let mut seen_alive = false;
    let mut death: Option<f64> = None;
    for k in 0..ts.len() {
        let alive = qs[k] >= threshold;
        if alive {
            if let Some(d) = death.take() {
                out.push(DeathWindow {
                    death: d,
                    revival: crossing(ts[k - 1], qs[k - 1], ts[k], qs[k], threshold),
                });
            }
            seen_alive = true;
        } else if seen_alive && death.is_none() {
            death = Some(crossing(ts[k - 1], qs[k - 1], ts[k], qs[k], threshold));
        }
    }
    out
}

/// Sampled closed-form `Q(t)` on `0, dt, ..., t_max` for one `alpha`.
pub fn discord_trace<R: Real>(kind: ScenarioKind, r: &RateSet<R>, alpha: R, t_max: R, dt: R) -> Result<(Vec<R>, Vec<R>)> {
    let ts = uniform_grid(t_max, dt)?;
    let qs = ts
        .par_iter()
        .map(|&t| closed_correlations(kind, t, r, alpha).map(|(_, q)| q))
        .collect::<Result<Vec<R>>>()?;
    Ok((ts, qs))
}

/// Death-and-revival windows of the closed-form `Q(t)` for each `alpha`.
///
/// Cells `(alpha, t)` are evaluated in parallel; rows come back in grid order.
pub fn sudden_death_scan<R: Real>(
    kind: ScenarioKind,
    r: &RateSet<R>,
    alpha_grid: &[R],
    t_max: R,
    dt: R,
) -> Result<ScanResult> {
    sudden_death_scan_with(kind, r, alpha_grid, t_max, dt, ZERO_THRESHOLD)
}

pub fn sudden_death_scan_with<R: Real>(
    kind: ScenarioKind,
    r: &RateSet<R>,
    alpha_grid: &[R],
    t_max: R,
    dt: R,
    threshold: f64,
) -> Result<ScanResult> {
    check_rates_closed_form(r)?;
    for &a in alpha_grid {
        check_alpha(a)?;
    }
    if !(dt * r.gamma <= R::lit(MAX_SCAN_DT)) {
        return Err(Error::Config(format!(
            "scan step {dt} exceeds {MAX_SCAN_DT}/gamma (gamma = {})",
            r.gamma
        )));
    }
    let ts = uniform_grid(t_max, dt)?;
    let nt = ts.len();
    let qs = (0..alpha_grid.len() * nt)
        .into_par_iter()
        .map(|idx| {
            let (ia, it) = (idx / nt, idx % nt);
            closed_correlations(kind, ts[it], r, alpha_grid[ia]).map(|(_, q)| q.as_f64())
        })
        .collect::<Result<Vec<f64>>>()?;
    let tf: Vec<f64> = ts.iter().map(|t| t.as_f64()).collect();
    let rows: Vec<AlphaScan> = alpha_grid
        .iter()
        .enumerate()
        .map(|(ia, a)| AlphaScan {
            alpha: a.as_f64(),
            windows: death_windows(&tf, &qs[ia * nt..(ia + 1) * nt], threshold),
        })
        .collect();
    let threshold_alpha = rows
        .iter()
        .filter(|row| !row.windows.is_empty())
        .map(|row| row.alpha)
        .reduce(f64::min);
    Ok(ScanResult { rows, threshold_alpha })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_detection() {
        let ts = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let qs = [0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let w = death_windows(&ts, &qs, 0.5);
        // the trailing dead stretch has no revival, the leading one no death
        assert_eq!(w.len(), 1);
        assert!((w[0].death - 1.5).abs() < 1e-15);
        assert!((w[0].revival - 3.5).abs() < 1e-15);
        assert!((w[0].duration() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_excitation_has_no_window() {
        let r = RateSet { gamma: 1.0, big_gamma: 0.0, eta: 0.0 };
        for kind in [ScenarioKind::Entangled, ScenarioKind::Mixed] {
            let s = sudden_death_scan(kind, &r, &[0.0], 10.0, SCAN_DT).unwrap();
            assert!(s.rows[0].windows.is_empty());
        }
    }

    #[test]
    fn rejects_coarse_step() {
        let r = RateSet { gamma: 1.0, big_gamma: 0.0, eta: 0.0 };
        assert!(sudden_death_scan(ScenarioKind::Entangled, &r, &[0.5], 10.0, 0.05).is_err());
    }

    #[test]
    fn scan_is_deterministic() {
        let r = RateSet { gamma: 1.0, big_gamma: -0.5, eta: 1.0 };
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let a = sudden_death_scan(ScenarioKind::Mixed, &r, &grid, 5.0, SCAN_DT).unwrap();
        let b = sudden_death_scan(ScenarioKind::Mixed, &r, &grid, 5.0, SCAN_DT).unwrap();
        assert_eq!(a, b);
    }
}
