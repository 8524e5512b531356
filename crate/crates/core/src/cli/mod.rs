//! Command-line front end.
//!
//! Data goes to standard output (or `--out`), summaries to standard error.
//! Exit codes: 0 success, 2 invalid input or usage, 3 numerical failure.

mod commands;
pub mod config;
mod presets;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::Error;
use config::Settings;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping sweep worker threads.
pub const THREADS_ENV: &str = "QOTTO_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_invalid_input() || matches!(e, Error::Io { .. }) {
            EXIT_USAGE
        } else {
            EXIT_NUMERICAL
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qotto",
    version,
    about = "Quantum Otto cycle with a q-deformed Pöschl–Teller working substance"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Sum,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the potential on a uniform x grid.
    Potential(PotentialArgs),
    /// Bound-state energies, optionally scanned over one parameter.
    Spectrum(SpectrumArgs),
    /// Thermal populations and partition function.
    Thermal(ThermalArgs),
    /// One Otto cycle.
    Cycle(CycleArgs),
    /// (q, Δ) grid of Otto cycles.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// fig1a | fig1b | fig1c
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// fig2a | fig2b | fig2c
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Parameter to scan: q | alpha | delta
    #[arg(long)]
    pub scan: Option<String>,
    #[arg(long)]
    pub scan_min: Option<f64>,
    #[arg(long)]
    pub scan_max: Option<f64>,
    #[arg(long)]
    pub scan_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ThermalArgs {
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Temperature.
    #[arg(long, short = 't')]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CycleArgs {
    /// fig4 | fig5: fills in widths and temperatures
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[command(flatten)]
    pub machine: MachineArgs,
}

#[derive(Debug, Args)]
pub struct MachineArgs {
    #[arg(long)]
    pub alpha_h: Option<f64>,
    #[arg(long)]
    pub alpha_c: Option<f64>,
    #[arg(long)]
    pub t_h: Option<f64>,
    #[arg(long)]
    pub t_c: Option<f64>,
    /// Largest probability mass the discrete route may drop.
    #[arg(long)]
    pub truncation_bound: Option<f64>,
    /// Energies within this band of zero count as zero for the regime.
    #[arg(long)]
    pub regime_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// fig4 | fig5
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub q_min: Option<f64>,
    #[arg(long)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub delta_min: Option<f64>,
    #[arg(long)]
    pub delta_max: Option<f64>,
    #[arg(long)]
    pub n_q: Option<usize>,
    #[arg(long)]
    pub n_delta: Option<usize>,
    #[command(flatten)]
    pub machine: MachineArgs,
}

impl MachineArgs {
    fn apply(&self, s: &mut Settings) {
        s.set("alpha_h", self.alpha_h);
        s.set("alpha_c", self.alpha_c);
        s.set("t_h", self.t_h);
        s.set("t_c", self.t_c);
        s.set("truncation_bound", self.truncation_bound);
        s.set("regime_tol", self.regime_tol);
    }
}

impl Command {
    fn apply(&self, s: &mut Settings) {
        match self {
            Command::Potential(a) => {
                s.set("preset", a.preset.as_ref());
                s.set("q", a.q);
                s.set("delta", a.delta);
                s.set("alpha", a.alpha);
                s.set("x_min", a.x_min);
                s.set("x_max", a.x_max);
                s.set("samples", a.samples);
            }
            Command::Spectrum(a) => {
                s.set("preset", a.preset.as_ref());
                s.set("q", a.q);
                s.set("delta", a.delta);
                s.set("alpha", a.alpha);
                s.set("scan", a.scan.as_ref());
                s.set("scan_min", a.scan_min);
                s.set("scan_max", a.scan_max);
                s.set("scan_points", a.scan_points);
            }
            Command::Thermal(a) => {
                s.set("q", a.q);
                s.set("delta", a.delta);
                s.set("alpha", a.alpha);
                s.set("t", a.t);
            }
            Command::Cycle(a) => {
                s.set("preset", a.preset.as_ref());
                s.set("q", a.q);
                s.set("delta", a.delta);
                a.machine.apply(s);
            }
            Command::Sweep(a) => {
                s.set("preset", a.preset.as_ref());
                s.set("q_min", a.q_min);
                s.set("q_max", a.q_max);
                s.set("delta_min", a.delta_min);
                s.set("delta_max", a.delta_max);
                s.set("n_q", a.n_q);
                s.set("n_delta", a.n_delta);
                a.machine.apply(s);
            }
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut s = match &cli.global.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let g = &cli.global;
    s.set("out", g.out.as_ref().map(|p| p.display()));
    s.set(
        "format",
        g.format.map(|f| match f {
            FormatArg::Csv => "csv",
            FormatArg::Json => "json",
        }),
    );
    s.set(
        "method",
        g.method.map(|m| match m {
            MethodArg::Closed => "closed",
            MethodArg::Sum => "sum",
            MethodArg::Both => "both",
        }),
    );
    cli.command.apply(&mut s);
    Ok(s)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = settings(&cli).and_then(|s| commands::dispatch(&cli.command, s, stdout, stderr));
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
