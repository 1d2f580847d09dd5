//! Flat `key = value` run configuration with `#` comments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use soliton_discord::becphys::{BecParams, RateSet};
use soliton_discord::scenarios::ScenarioKind;

use crate::error::CliError;

/// Time axis of inputs and outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Unit {
    /// Units of `hbar/mu` with physical parameters, of the rate unit otherwise.
    Dimensionless,
    /// Milliseconds; needs physical parameters.
    Ms,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Dimensionless => "dimensionless",
            Unit::Ms => "ms",
        })
    }
}

impl FromStr for Unit {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "dimensionless" => Ok(Unit::Dimensionless),
            "ms" => Ok(Unit::Ms),
            other => Err(CliError::Usage(format!("unknown unit '{other}' (expected dimensionless or ms)"))),
        }
    }
}

/// Every setting of a run. Unset fields fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub g: Option<f64>,
    pub chi: Option<f64>,
    pub big_m: Option<f64>,
    pub m: Option<f64>,
    pub n0: Option<f64>,
    pub quant_length: Option<f64>,
    pub gamma: Option<f64>,
    pub big_gamma: Option<f64>,
    pub eta: Option<f64>,
    pub d: Option<f64>,
    pub d_max: Option<f64>,
    pub d_points: Option<usize>,
    pub scenario: Option<ScenarioKind>,
    pub alpha: Option<f64>,
    pub alpha_step: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub unit: Option<Unit>,
    pub vn: Option<bool>,
    pub out: Option<PathBuf>,
    pub json: Option<bool>,
}

/// File keys in serialization order.
pub const KEYS: [&str; 21] = [
    "g",
    "chi",
    "M",
    "m",
    "n0",
    "quant_length",
    "gamma",
    "Gamma",
    "eta",
    "d",
    "d_max",
    "d_points",
    "scenario",
    "alpha",
    "alpha_step",
    "t_max",
    "dt",
    "unit",
    "vn",
    "out",
    "json",
];

/// Where the rates come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateSource {
    Physical(BecParams<f64>),
    Direct(RateSet<f64>),
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value '{value}' for '{key}'")))
}

fn set<T>(slot: &mut Option<T>, key: &str, value: T) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(CliError::Usage(format!("duplicate key '{key}'")));
    }
    *slot = Some(value);
    Ok(())
}

impl RunConfig {
    /// Parses the file format. Unknown and repeated keys are errors.
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        let mut c = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected 'key = value'", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "g" => set(&mut c.g, key, parse(key, value)?)?,
                "chi" => set(&mut c.chi, key, parse(key, value)?)?,
                "M" => set(&mut c.big_m, key, parse(key, value)?)?,
                "m" => set(&mut c.m, key, parse(key, value)?)?,
                "n0" => set(&mut c.n0, key, parse(key, value)?)?,
                "quant_length" => set(&mut c.quant_length, key, parse(key, value)?)?,
                "gamma" => set(&mut c.gamma, key, parse(key, value)?)?,
                "Gamma" => set(&mut c.big_gamma, key, parse(key, value)?)?,
                "eta" => set(&mut c.eta, key, parse(key, value)?)?,
                "d" => set(&mut c.d, key, parse(key, value)?)?,
                "d_max" => set(&mut c.d_max, key, parse(key, value)?)?,
                "d_points" => set(&mut c.d_points, key, parse(key, value)?)?,
                "scenario" => set(&mut c.scenario, key, value.parse().map_err(CliError::from)?)?,
                "alpha" => set(&mut c.alpha, key, parse(key, value)?)?,
                "alpha_step" => set(&mut c.alpha_step, key, parse(key, value)?)?,
                "t_max" => set(&mut c.t_max, key, parse(key, value)?)?,
                "dt" => set(&mut c.dt, key, parse(key, value)?)?,
                "unit" => set(&mut c.unit, key, value.parse()?)?,
                "vn" => set(&mut c.vn, key, parse(key, value)?)?,
                "out" => set(&mut c.out, key, PathBuf::from(value))?,
                "json" => set(&mut c.json, key, parse(key, value)?)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "line {}: unknown key '{other}' (known: {})",
                        n + 1,
                        KEYS.join(", ")
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Canonical text form: set keys in [`KEYS`] order, floats in shortest
    /// round-trip notation.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push_str(&format!("{k} = {v}\n"));
            }
        };
        let f = |v: Option<f64>| v.map(|x| format!("{x:?}"));
        put("g", f(self.g));
        put("chi", f(self.chi));
        put("M", f(self.big_m));
        put("m", f(self.m));
        put("n0", f(self.n0));
        put("quant_length", f(self.quant_length));
        put("gamma", f(self.gamma));
        put("Gamma", f(self.big_gamma));
        put("eta", f(self.eta));
        put("d", f(self.d));
        put("d_max", f(self.d_max));
        put("d_points", self.d_points.map(|v| v.to_string()));
        put("scenario", self.scenario.map(|v| v.to_string()));
        put("alpha", f(self.alpha));
        put("alpha_step", f(self.alpha_step));
        put("t_max", f(self.t_max));
        put("dt", f(self.dt));
        put("unit", self.unit.map(|v| v.to_string()));
        put("vn", self.vn.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("json", self.json.map(|v| v.to_string()));
        out
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(&mut self, other: RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            g, chi, big_m, m, n0, quant_length, gamma, big_gamma, eta, d, d_max, d_points, scenario, alpha,
            alpha_step, t_max, dt, unit, vn, out, json
        );
    }

    /// Physical parameters or direct rates, exactly one of the two.
    pub fn rate_source(&self) -> Result<RateSource, CliError> {
        let phys = [self.g, self.chi, self.big_m, self.m, self.n0, self.quant_length];
        let direct = [self.gamma, self.big_gamma, self.eta];
        let n_phys = phys.iter().filter(|v| v.is_some()).count();
        let any_direct = direct.iter().any(|v| v.is_some());
        match (n_phys, any_direct) {
            (6, false) => Ok(RateSource::Physical(BecParams {
                g: self.g.unwrap(),
                chi: self.chi.unwrap(),
                big_m: self.big_m.unwrap(),
                m: self.m.unwrap(),
                n0: self.n0.unwrap(),
                quant_length: self.quant_length.unwrap(),
            })),
            (0, true) => Ok(RateSource::Direct(RateSet {
                gamma: self
                    .gamma
                    .ok_or_else(|| CliError::Usage("direct rates need gamma".into()))?,
                big_gamma: self.big_gamma.unwrap_or(0.0),
                eta: self.eta.unwrap_or(0.0),
            })),
            (0, false) => Err(CliError::Usage(
                "supply either physical parameters (g, chi, M, m, n0, quant_length) or rates (gamma, Gamma, eta)".into(),
            )),
            (n, false) => Err(CliError::Usage(format!(
                "physical parameters incomplete: {n} of g, chi, M, m, n0, quant_length set"
            ))),
            (_, true) => Err(CliError::Usage(
                "physical parameters and direct rates are mutually exclusive".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# few-kHz condensate
g = 3.8530766437953815e-39
chi = 2.674836630735904e-38   # chi/g = 6.94208
M = 1.443160648e-25
m = 2.886321296e-26
n0 = 8e7
quant_length = 2e-4
d = 2.5
scenario = mixed
alpha = 0.3
t_max = 10
unit = ms
vn = false
out = runs/out.csv
";

    #[test]
    fn round_trip_is_idempotent() {
        let c = RunConfig::parse_str(SAMPLE).unwrap();
        let once = c.to_config_string();
        let again = RunConfig::parse_str(&once).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_config_string(), once);
    }

    #[test]
    fn every_key_round_trips() {
        let text = "g = 1.0\nchi = 2.0\nM = 3.0\nm = 4.0\nn0 = 5.0\nquant_length = 6.0\ngamma = 1.0\nGamma = -0.5\n\
                    eta = 0.25\nd = 2.5\nd_max = 10.0\nd_points = 11\nscenario = entangled\nalpha = 0.5\n\
                    alpha_step = 0.01\nt_max = 5.0\ndt = 0.05\nunit = dimensionless\nvn = true\nout = x.csv\njson = false\n";
        let c = RunConfig::parse_str(text).unwrap();
        assert_eq!(c.to_config_string(), text);
        assert_eq!(text.lines().count(), KEYS.len());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse_str("nope = 1").is_err());
        assert!(RunConfig::parse_str("gamma = 1\ngamma = 2").is_err());
        assert!(RunConfig::parse_str("gamma").is_err());
        assert!(RunConfig::parse_str("gamma = x").is_err());
    }

    #[test]
    fn rate_source_exclusivity() {
        let phys = RunConfig::parse_str(SAMPLE).unwrap();
        assert!(matches!(phys.rate_source(), Ok(RateSource::Physical(_))));
        let mut both = phys.clone();
        both.gamma = Some(1.0);
        assert!(both.rate_source().is_err());
        let partial = RunConfig::parse_str("g = 1\nchi = 1").unwrap();
        assert!(partial.rate_source().is_err());
        let direct = RunConfig::parse_str("gamma = 1\nGamma = 0.5").unwrap();
        assert_eq!(
            direct.rate_source().unwrap(),
            RateSource::Direct(RateSet { gamma: 1.0, big_gamma: 0.5, eta: 0.0 })
        );
        assert!(RunConfig::default().rate_source().is_err());
    }

    #[test]
    fn overlay_prefers_flags() {
        let mut c = RunConfig::parse_str("gamma = 1\nalpha = 0.2").unwrap();
        c.overlay(RunConfig {
            alpha: Some(0.9),
            ..Default::default()
        });
        assert_eq!((c.gamma, c.alpha), (Some(1.0), Some(0.9)));
    }
}
