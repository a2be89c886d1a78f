//! `moledrill` — command-line harness for the drilling-robot models.
//!
//! Subcommands: predict, optimize, validate, simulate, caster, forelimb.
//! Exit codes: 0 ok, 1 check failed, 2 input error, 3 model infeasible.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moledrill_core::{Config, Error};

/// Configuration-path fallback when `--config` is not given.
pub const CONFIG_ENV_VAR: &str = "MOLEDRILL_CONFIG";

#[derive(Debug, Parser)]
#[command(
    name = "moledrill",
    version,
    about = "Simulator, calibrator, and optimizer for an expandable-bit drilling robot"
)]
struct Cli {
    /// Configuration file (TOML); defaults apply when absent.
    /// Falls back to the MOLEDRILL_CONFIG environment variable.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Emit the full report as JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the subcommand's CSV artifact to this path.
    #[arg(long, global = true, value_name = "PATH")]
    csv_out: Option<PathBuf>,

    /// Maximum relative ROP error accepted by `validate`.
    #[arg(long, global = true, default_value_t = 0.35)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the drilling chain over a weight-on-bit range and emit the
    /// curve as CSV.
    Predict {
        /// Lowest weight on bit (N).
        #[arg(long, default_value_t = 30.0)]
        wob_min: f64,
        /// Highest weight on bit (N).
        #[arg(long, default_value_t = 140.0)]
        wob_max: f64,
        /// Grid step (N).
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Calibrate against drilling records, then locate the operating point
    /// where specific energy meets the target strength.
    Optimize {
        #[arg(long, default_value_t = 30.0)]
        wob_min: f64,
        #[arg(long, default_value_t = 140.0)]
        wob_max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Drilling records CSV; the bundled dataset when absent.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
    },
    /// Compare the calibrated model against drilling records row by row.
    Validate {
        /// Drilling records CSV; the bundled dataset when absent.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
    },
    /// Run the six-phase excavation cycle to a target depth.
    Simulate {
        /// Total depth to excavate (m); overrides the configured plan.
        #[arg(long, value_name = "M")]
        target_depth: Option<f64>,
        /// Weight on bit for the drill phases (N).
        #[arg(long, default_value_t = 93.3)]
        wob: f64,
    },
    /// Resolve the caster-wheel torque balance.
    Caster,
    /// Fit the forelimb push transmission and report residuals.
    Forelimb {
        /// Push-test CSV; the configured table when absent.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let config = resolve_config(cli.config.as_deref())?;
    let out = commands::Output {
        json: cli.json,
        csv_out: cli.csv_out.clone(),
    };
    match cli.command {
        Command::Predict {
            wob_min,
            wob_max,
            step,
        } => commands::predict(&config, wob_min, wob_max, step, &out),
        Command::Optimize {
            wob_min,
            wob_max,
            step,
            data,
        } => commands::optimize(&config, wob_min, wob_max, step, data.as_deref(), &out),
        Command::Validate { data } => {
            commands::validate(&config, data.as_deref(), cli.tolerance, &out)
        }
        Command::Simulate { target_depth, wob } => {
            commands::simulate(&config, target_depth, wob, &out)
        }
        Command::Caster => commands::caster(&config, &out),
        Command::Forelimb { data } => commands::forelimb(&config, data.as_deref(), &out),
    }
}

fn resolve_config(path: Option<&std::path::Path>) -> Result<Config, Error> {
    if let Some(path) = path {
        return Config::from_path(path);
    }
    if let Ok(env_path) = std::env::var(CONFIG_ENV_VAR) {
        if !env_path.is_empty() {
            return Config::from_path(std::path::Path::new(&env_path));
        }
    }
    Ok(Config::default())
}

/// 2 for bad input, 3 for a model that cannot run there.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ConfigParse(_)
        | Error::Validation { .. }
        | Error::Data(_)
        | Error::Io { .. }
        | Error::Domain { .. }
        | Error::Calibration { .. }
        | Error::Fit(_)
        | Error::WidthOutOfRange { .. } => 2,
        Error::Stall { .. } | Error::InfeasibleRate(_) | Error::Sequence(_) => 3,
    }
}
