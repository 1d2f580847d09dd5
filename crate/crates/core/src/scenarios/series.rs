use rayon::prelude::*;

use crate::correlations::{classical_correlation_c2, concurrence, quantum_discord, vn_discord};
use crate::dynamics::{dicke_index::*, evolve_closed_form, to_product};
use crate::error::Result;
use crate::scalar::Real;

use super::closed_correlations;
use super::config::ScenarioConfig;
use super::discrepancy::AGREEMENT_TOL;

/// One sample of a scenario run. Populations are Dicke-basis.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TimeSeriesRecord {
    pub t: f64,
    pub rho_ee: f64,
    pub rho_ss: f64,
    pub rho_aa: f64,
    pub rho_gg: f64,
    pub concurrence: f64,
    pub c2_closed: f64,
    pub c2_pipeline: f64,
    pub q_closed: f64,
    pub q_pipeline: f64,
    pub q_vn: Option<f64>,
    /// Closed form and pipeline differ by more than [`AGREEMENT_TOL`], or
    /// the pipeline failed (its columns are then NaN).
    pub flag: bool,
}

impl TimeSeriesRecord {
    pub const COLUMNS: [&'static str; 12] = [
        "t",
        "rho_ee",
        "rho_ss",
        "rho_aa",
        "rho_gg",
        "concurrence",
        "c2_closed",
        "c2_pipeline",
        "q_closed",
        "q_pipeline",
        "q_vn",
        "flag",
    ];
}

struct Pipeline {
    conc: f64,
    c2: f64,
    q: f64,
    q_vn: Option<f64>,
}

fn pipeline<R: Real>(ps: &crate::dynamics::ProductState<R>, with_vn: bool) -> Result<Pipeline> {
    Ok(Pipeline {
        conc: concurrence(ps)?.as_f64(),
        c2: classical_correlation_c2(ps)?.as_f64(),
        q: quantum_discord(ps)?.as_f64(),
        q_vn: if with_vn { Some(vn_discord(ps)?.as_f64()) } else { None },
    })
}

/// Evolves the scenario over its time grid and evaluates every column.
///
/// Rows are computed in parallel and returned in grid order. Disagreements
/// and pipeline failures are flagged rather than returned as errors.
pub fn time_series<R: Real>(cfg: &ScenarioConfig<R>, with_vn: bool) -> Result<Vec<TimeSeriesRecord>> {
    cfg.validate()?;
    let rho0 = cfg.initial_state()?;
    cfg.t_grid
        .par_iter()
        .map(|&t| {
            let ds = evolve_closed_form(&rho0, &cfg.rates, t)?;
            let (c2c, qc) = closed_correlations(cfg.kind, t, &cfg.rates, cfg.state_alpha)?;
            let (c2c, qc) = (c2c.as_f64(), qc.as_f64());
            let p = pipeline(&to_product(&ds), with_vn).unwrap_or(Pipeline {
                conc: f64::NAN,
                c2: f64::NAN,
                q: f64::NAN,
                q_vn: with_vn.then_some(f64::NAN),
            });
            let agrees = (c2c - p.c2).abs() <= AGREEMENT_TOL && (qc - p.q).abs() <= AGREEMENT_TOL;
            Ok(TimeSeriesRecord {
                t: t.as_f64(),
                rho_ee: ds.population(E).as_f64(),
                rho_ss: ds.population(S).as_f64(),
                rho_aa: ds.population(A).as_f64(),
                rho_gg: ds.population(G).as_f64(),
                concurrence: p.conc,
                c2_closed: c2c,
                c2_pipeline: p.c2,
                q_closed: qc,
                q_pipeline: p.q,
                q_vn: p.q_vn,
                flag: !agrees,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::becphys::RateSet;
    use crate::scenarios::{uniform_grid, ScenarioKind};

    fn cfg(kind: ScenarioKind, bg: f64, eta: f64, alpha: f64) -> ScenarioConfig<f64> {
        ScenarioConfig {
            kind,
            state_alpha: alpha,
            rates: RateSet { gamma: 1.0, big_gamma: bg, eta },
            t_grid: uniform_grid(6.0, 0.05).unwrap(),
        }
    }

    #[test]
    fn superposition_shape() {
        let rows = time_series(&cfg(ScenarioKind::Superposition, 0.5, 1.0, 0.0), false).unwrap();
        assert_eq!(rows[0].q_closed, 0.0);
        assert!(rows.iter().all(|r| !r.flag));
        let q: Vec<f64> = rows.iter().map(|r| r.q_closed).collect();
        let imax = (0..q.len()).max_by(|&a, &b| q[a].total_cmp(&q[b])).unwrap();
        assert!(imax > 0 && imax < q.len() - 1);
        assert!(q[q.len() - 1] < 0.1 * q[imax]);
    }

    #[test]
    fn antisymmetric_decays_faster_for_negative_gamma() {
        let rows = time_series(&cfg(ScenarioKind::Superposition, -0.6, 1.0, 0.0), false).unwrap();
        for r in &rows[1..] {
            assert!(r.rho_aa < r.rho_ss);
        }
    }

    #[test]
    fn populations_normalized_and_vn_column() {
        let mut c = cfg(ScenarioKind::Mixed, 0.3, 0.0, 0.5);
        c.t_grid.truncate(5);
        let rows = time_series(&c, true).unwrap();
        for r in &rows {
            assert!((r.rho_ee + r.rho_ss + r.rho_aa + r.rho_gg - 1.0).abs() < 1e-10);
            assert!(r.q_vn.is_some());
        }
    }
}
