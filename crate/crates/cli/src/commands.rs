use std::path::PathBuf;

use serde::Serialize;

use soliton_discord::becphys::{derive_params, rates, rates_profile, RateSet};
use soliton_discord::scenarios::{sudden_death_scan, time_series, uniform_grid, ScenarioConfig, ScenarioKind};
use soliton_discord::validation::{run_selected, Overrides, Status, CRITERIA, REFERENCE_SEPARATION};

use crate::config::{RateSource, RunConfig, Unit};
use crate::error::CliError;
use crate::output::{emit, num, opt, Csv};

const DEFAULT_D_MAX: f64 = 10.0;
const DEFAULT_D_POINTS: usize = 201;
const DEFAULT_ALPHA: f64 = 0.5;
const DEFAULT_ALPHA_STEP: f64 = 0.01;

/// Rates in the run's time unit plus the conversion to milliseconds, which
/// exists only for physical parameters.
struct Resolved {
    rates: RateSet<f64>,
    ms_per_unit: Option<f64>,
}

fn resolve(cfg: &RunConfig) -> Result<Resolved, CliError> {
    match cfg.rate_source()? {
        RateSource::Physical(p) => {
            let dp = derive_params(&p)?;
            let d = cfg.d.unwrap_or(REFERENCE_SEPARATION);
            Ok(Resolved {
                rates: rates(d, &dp)?,
                ms_per_unit: Some(dp.time_unit * 1e3),
            })
        }
        RateSource::Direct(r) => {
            if cfg.d.is_some() {
                return Err(CliError::Usage("d only applies with physical parameters".into()));
            }
            Ok(Resolved { rates: r, ms_per_unit: None })
        }
    }
}

/// Factor from the internal time unit to the output unit.
fn output_scale(cfg: &RunConfig, res: &Resolved) -> Result<f64, CliError> {
    match cfg.unit.unwrap_or(Unit::Dimensionless) {
        Unit::Dimensionless => Ok(1.0),
        Unit::Ms => res
            .ms_per_unit
            .ok_or_else(|| CliError::Usage("unit ms needs physical parameters".into())),
    }
}

/// `(t_max, dt)` in internal units; defaults are multiples of `1/gamma`.
fn time_grid(cfg: &RunConfig, gamma: f64, scale: f64, t_max: f64, dt: f64) -> Result<(f64, f64), CliError> {
    let t = cfg.t_max.map_or(t_max / gamma, |v| v / scale);
    let h = cfg.dt.map_or(dt / gamma, |v| v / scale);
    if !(t > 0.0 && t.is_finite()) {
        return Err(CliError::Usage(format!("t_max must be > 0 (got {})", cfg.t_max.unwrap_or(t))));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(CliError::Usage(format!("dt must be > 0 (got {})", cfg.dt.unwrap_or(h))));
    }
    Ok((t, h))
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RateRow {
    d: f64,
    #[serde(rename = "Gamma_over_gamma")]
    gamma_ratio: f64,
    eta_over_gamma: f64,
}

pub fn cmd_rates(cfg: &RunConfig) -> Result<(), CliError> {
    let RateSource::Physical(p) = cfg.rate_source()? else {
        return Err(CliError::Usage("rates needs physical parameters".into()));
    };
    let d_max = cfg.d_max.unwrap_or(DEFAULT_D_MAX);
    let n = cfg.d_points.unwrap_or(DEFAULT_D_POINTS);
    if !(d_max > 0.0 && d_max.is_finite()) || n < 2 {
        return Err(CliError::Usage("d grid needs d_max > 0 and d_points >= 2".into()));
    }
    let dp = derive_params(&p)?;
    let ds: Vec<f64> = (0..n).map(|i| d_max * i as f64 / (n - 1) as f64).collect();
    let rows: Vec<RateRow> = rates_profile(&ds, &dp)?
        .iter()
        .zip(&ds)
        .map(|(r, &d)| {
            let rel = r.relative();
            RateRow {
                d,
                gamma_ratio: rel.big_gamma,
                eta_over_gamma: rel.eta,
            }
        })
        .collect();
    let text = if cfg.json.unwrap_or(false) {
        to_json(&rows)
    } else {
        let mut csv = Csv::new(&["d", "Gamma_over_gamma", "eta_over_gamma"]);
        for r in &rows {
            csv.row([num(r.d), num(r.gamma_ratio), num(r.eta_over_gamma)]);
        }
        csv.into_string()
    };
    emit(&text, cfg.out.as_deref())
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<(), CliError> {
    let res = resolve(cfg)?;
    let scale = output_scale(cfg, &res)?;
    let (t_max, dt) = time_grid(cfg, res.rates.gamma, scale, 5.0, 0.05)?;
    let sc = ScenarioConfig {
        kind: cfg.scenario.unwrap_or(ScenarioKind::Superposition),
        state_alpha: cfg.alpha.unwrap_or(DEFAULT_ALPHA),
        rates: res.rates,
        t_grid: uniform_grid(t_max, dt)?,
    };
    let mut records = time_series(&sc, cfg.vn.unwrap_or(false))?;
    for r in &mut records {
        r.t *= scale;
    }
    let text = if cfg.json.unwrap_or(false) {
        to_json(&records)
    } else {
        let mut csv = Csv::new(&soliton_discord::scenarios::TimeSeriesRecord::COLUMNS);
        for r in &records {
            csv.row([
                num(r.t),
                num(r.rho_ee),
                num(r.rho_ss),
                num(r.rho_aa),
                num(r.rho_gg),
                num(r.concurrence),
                num(r.c2_closed),
                num(r.c2_pipeline),
                num(r.q_closed),
                num(r.q_pipeline),
                opt(r.q_vn),
                r.flag.to_string(),
            ]);
        }
        csv.into_string()
    };
    emit(&text, cfg.out.as_deref())
}

#[derive(Serialize)]
struct ScanRow {
    alpha: f64,
    death_start: Option<f64>,
    revival_end: Option<f64>,
    dark_duration: Option<f64>,
}

#[derive(Serialize)]
struct ScanOutput {
    rows: Vec<ScanRow>,
    threshold_alpha: Option<f64>,
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = match cfg.scenario {
        Some(k @ (ScenarioKind::Entangled | ScenarioKind::Mixed)) => k,
        _ => return Err(CliError::Usage("scan needs --scenario entangled or mixed".into())),
    };
    let res = resolve(cfg)?;
    let scale = output_scale(cfg, &res)?;
    let (t_max, dt) = time_grid(cfg, res.rates.gamma, scale, 10.0, 0.005)?;
    let step = cfg.alpha_step.unwrap_or(DEFAULT_ALPHA_STEP);
    if !(step > 0.0 && step <= 1.0) {
        return Err(CliError::Usage(format!("alpha_step must lie in (0, 1] (got {step})")));
    }
    let n = (1.0 / step).round().max(1.0) as usize;
    let alphas: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let scan = sudden_death_scan(kind, &res.rates, &alphas, t_max, dt)?;
    let out = ScanOutput {
        rows: scan
            .rows
            .iter()
            .map(|row| {
                let w = row.first_window();
                ScanRow {
                    alpha: row.alpha,
                    death_start: w.map(|w| w.death * scale),
                    revival_end: w.map(|w| w.revival * scale),
                    dark_duration: w.map(|w| w.duration() * scale),
                }
            })
            .collect(),
        threshold_alpha: scan.threshold_alpha,
    };
    let text = if cfg.json.unwrap_or(false) {
        to_json(&out)
    } else {
        let mut csv = Csv::new(&["alpha", "death_start", "revival_end", "dark_duration"]);
        for r in &out.rows {
            csv.row([num(r.alpha), opt(r.death_start), opt(r.revival_end), opt(r.dark_duration)]);
        }
        csv.comment(&format!(
            "threshold_alpha = {}",
            out.threshold_alpha.map_or("none".to_string(), num)
        ));
        csv.into_string()
    };
    emit(&text, cfg.out.as_deref())
}

pub struct ValidateOptions {
    pub only: Vec<u8>,
    pub c2_prefactor: Option<f64>,
    pub json: bool,
    pub out: Option<PathBuf>,
}

pub fn cmd_validate(opts: &ValidateOptions) -> Result<(), CliError> {
    let known: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    if let Some(bad) = opts.only.iter().find(|id| !known.contains(id)) {
        return Err(CliError::Usage(format!("unknown criterion {bad} (expected 1 to {})", known.len())));
    }
    let ids = if opts.only.is_empty() { known } else { opts.only.clone() };
    let mut ov = Overrides::default();
    if let Some(p) = opts.c2_prefactor {
        ov.c2_prefactor = p;
    }
    let reports = run_selected(&ids, &ov);
    let text = if opts.json {
        to_json(&reports)
    } else {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!("{r}\n"));
        }
        s
    };
    emit(&text, opts.out.as_deref())?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{} ({})", r.id, r.name))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(failed.join(", ")))
    }
}
