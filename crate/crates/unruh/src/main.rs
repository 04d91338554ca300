use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use unruh::cli::{self, RunOptions};

/// Quantum pair radiation vs classical Larmor radiation from electrons in
/// ultra-strong field pulses.
#[derive(Parser)]
#[command(name = "unruh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Path to a TOML run config, or a bundled name (fig1, static_fixture,
    /// trajectory, cone, probability, slopes, sweep_e0, vacuum).
    #[arg(long)]
    config: String,
    /// Output directory override.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Multiplies the configured quadrature tolerances.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and tabulate the electron worldline.
    Trajectory(Common),
    /// Quantum vs classical magnitude maps over (k, theta), or the static
    /// analytic fixture table.
    Map(Common),
    /// Quantum-domination cone angles.
    Cone(Common),
    /// Pair and single-photon probabilities by mode sums.
    Probability(Common),
    /// Parameter sweeps with selectable observables.
    Sweep(Common),
    /// Spectral power-law fits and super-polynomial decay probes.
    Slopes(Common),
    /// Euler-Heisenberg permittivity and forward-leakage tables.
    Vacuum(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (sub, common) = match &cli.command {
        Command::Trajectory(c) => (cli::Subcommand::Trajectory, c),
        Command::Map(c) => (cli::Subcommand::Map, c),
        Command::Cone(c) => (cli::Subcommand::Cone, c),
        Command::Probability(c) => (cli::Subcommand::Probability, c),
        Command::Sweep(c) => (cli::Subcommand::Sweep, c),
        Command::Slopes(c) => (cli::Subcommand::Slopes, c),
        Command::Vacuum(c) => (cli::Subcommand::Vacuum, c),
    };
    let opts = RunOptions {
        out_override: common.out.clone(),
        threads: common.threads,
        tolerance_scale: common.tolerance_scale,
    };
    match cli::run(sub, &common.config, &opts) {
        Ok(dir) => {
            println!("outputs written to {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
