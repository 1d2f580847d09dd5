//! Command-line front end: rate profiles, scenario time series, sudden-death
//! scans and the acceptance suite.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use soliton_discord::scenarios::ScenarioKind;

use commands::ValidateOptions;
use config::{RunConfig, Unit};
use error::{CliError, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "soliton-discord", version, about = "Two dark-soliton qubits in a condensate bath")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gamma/gamma and eta/gamma against separation.
    Rates(RunArgs),
    /// Time series of populations and correlations for one scenario.
    Evolve(RunArgs),
    /// Sudden-death windows of the discord against the state weight alpha.
    Scan(RunArgs),
    /// Runs the acceptance checks.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Single-qubit decay rate.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Collective damping rate.
    #[arg(long = "Gamma", allow_hyphen_values = true)]
    big_gamma: Option<f64>,
    /// Coherent exchange coupling.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// Qubit separation in healing lengths (physical parameters only).
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    /// Largest separation of the rate profile.
    #[arg(long = "d-max")]
    d_max: Option<f64>,
    /// Number of separations in the rate profile.
    #[arg(long = "d-points")]
    d_points: Option<usize>,
    /// superposition, entangled or mixed.
    #[arg(long, value_parser = parse_scenario)]
    scenario: Option<ScenarioKind>,
    /// State weight of the entangled and mixed scenarios.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Alpha grid step of the scan.
    #[arg(long = "alpha-step")]
    alpha_step: Option<f64>,
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
    #[arg(long, value_enum)]
    unit: Option<Unit>,
    /// Also compute the von Neumann discord (slow).
    #[arg(long)]
    vn: bool,
    /// Output file, written atomically; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON instead of CSV.
    #[arg(long)]
    json: bool,
    /// Print the merged configuration in file format and exit.
    #[arg(long = "dump-config")]
    dump_config: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Comma-separated criterion ids; all if absent.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    /// Replaces the C2 prefactor, to confirm the suite catches a corrupted constant.
    #[arg(long = "c2-prefactor", hide = true, allow_hyphen_values = true)]
    c2_prefactor: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn parse_scenario(s: &str) -> Result<ScenarioKind, String> {
    s.parse().map_err(|e: soliton_discord::Error| e.to_string())
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        cfg.overlay(RunConfig {
            gamma: self.gamma,
            big_gamma: self.big_gamma,
            eta: self.eta,
            d: self.d,
            d_max: self.d_max,
            d_points: self.d_points,
            scenario: self.scenario,
            alpha: self.alpha,
            alpha_step: self.alpha_step,
            t_max: self.t_max,
            dt: self.dt,
            unit: self.unit,
            vn: self.vn.then_some(true),
            out: self.out,
            json: self.json.then_some(true),
            ..Default::default()
        });
        Ok(cfg)
    }
}

fn run_with(args: RunArgs, cmd: fn(&RunConfig) -> Result<(), CliError>) -> Result<(), CliError> {
    let dump = args.dump_config;
    let cfg = args.into_config()?;
    if dump {
        print!("{}", cfg.to_config_string());
        return Ok(());
    }
    cmd(&cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rates(a) => run_with(a, commands::cmd_rates),
        Command::Evolve(a) => run_with(a, commands::cmd_evolve),
        Command::Scan(a) => run_with(a, commands::cmd_scan),
        Command::Validate(a) => commands::cmd_validate(&ValidateOptions {
            only: a.only,
            c2_prefactor: a.c2_prefactor,
            json: a.json,
            out: a.out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
