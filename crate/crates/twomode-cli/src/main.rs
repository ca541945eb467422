//! Batch driver for the two-mode verification library. Every subcommand
//! sweeps its inputs in a fixed order, cross-checks each computed quantity
//! against an independent reference, and emits one record per check as CSV
//! (default) or JSON. Identical invocations produce identical bytes.
//!
//! Exit status: 0 when every gating check passes, 2 when any gating check
//! fails its tolerance, 1 on invalid input or an internal error.

mod commands;
mod record;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twomode::Complex64;

use record::{emit_records, OutputFormat, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "twomode",
    version,
    about = "Two-mode quadrature/orientation verification sweeps"
)]
struct Cli {
    /// Output serialization.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write records to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Override every gating tolerance with a single value.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical Poisson brackets at a phase-space point, checked against
    /// closed forms and a central-difference oracle.
    Brackets(commands::BracketsArgs),
    /// Truncated-Fock commutator expectations on coherent states, checked
    /// against the classical brackets.
    Commutators(commands::CommutatorsArgs),
    /// Squeezing-spectrum tabulation with a dual-route formula check.
    Spectrum(commands::SpectrumArgs),
    /// Synthesize a homodyne record and re-estimate its spectrum.
    HomodyneSim(commands::HomodyneSimArgs),
    /// Transverse-mode profile maps and overlap integrals.
    Modes(commands::ModesArgs),
}

/// Parses `re` or `re,im` into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse()
        .map_err(|e| format!("bad real part in {s:?}: {e}"))?;
    let im: f64 = match parts.next() {
        Some(t) => t
            .trim()
            .parse()
            .map_err(|e| format!("bad imaginary part in {s:?}: {e}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn dimension_cap() -> usize {
    match std::env::var("TWOMODE_DIM_CAP") {
        Ok(raw) => raw.parse().unwrap_or_else(|_| {
            eprintln!("ignoring unparsable TWOMODE_DIM_CAP={raw:?}");
            twomode::fock::DEFAULT_DIMENSION_CAP
        }),
        Err(_) => twomode::fock::DEFAULT_DIMENSION_CAP,
    }
}

fn run(cli: &Cli) -> anyhow::Result<usize> {
    let config = RunConfig {
        command: match cli.command {
            Command::Brackets(_) => "brackets",
            Command::Commutators(_) => "commutators",
            Command::Spectrum(_) => "spectrum",
            Command::HomodyneSim(_) => "homodyne-sim",
            Command::Modes(_) => "modes",
        },
        format: cli.format,
        output: cli.output.clone(),
        tolerance: cli.tolerance,
        dimension_cap: dimension_cap(),
    };
    let records = match &cli.command {
        Command::Brackets(args) => commands::cmd_brackets(args, &config)?,
        Command::Commutators(args) => commands::cmd_commutators(args, &config)?,
        Command::Spectrum(args) => commands::cmd_spectrum(args, &config)?,
        Command::HomodyneSim(args) => commands::cmd_homodyne_sim(args, &config)?,
        Command::Modes(args) => commands::cmd_modes(args, &config)?,
    };
    emit_records(&config, &records)?;
    Ok(records.iter().filter(|r| r.gating && !r.pass).count())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} gating check(s) failed tolerance");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
