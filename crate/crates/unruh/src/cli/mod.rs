//! Configuration-driven front end: TOML run configs, subcommand pipelines,
//! reproducible CSV/PGM/manifest outputs.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical convergence
//! failure, 4 I/O error. The `UNRUH_OUT_DIR` environment variable overrides
//! the configured output directory; a `--out` flag overrides both.

pub mod config;
pub mod output;
pub mod runner;

use std::path::PathBuf;
use thiserror::Error;

pub use config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerics(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerics(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Trajectory,
    Map,
    Cone,
    Probability,
    Sweep,
    Slopes,
    Vacuum,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_override: Option<PathBuf>,
    pub threads: Option<usize>,
    pub tolerance_scale: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            out_override: None,
            threads: None,
            tolerance_scale: 1.0,
        }
    }
}

/// Ready-to-run configurations compiled into the binary; `--config <name>`
/// resolves against these before the filesystem.
pub const BUNDLED_CONFIGS: &[(&str, &str)] = &[
    ("fig1", include_str!("../../configs/fig1.toml")),
    (
        "static_fixture",
        include_str!("../../configs/static_fixture.toml"),
    ),
    ("trajectory", include_str!("../../configs/trajectory.toml")),
    ("cone", include_str!("../../configs/cone.toml")),
    ("probability", include_str!("../../configs/probability.toml")),
    ("slopes", include_str!("../../configs/slopes.toml")),
    ("sweep_e0", include_str!("../../configs/sweep_e0.toml")),
    ("vacuum", include_str!("../../configs/vacuum.toml")),
];

/// Loads a config by bundled name or path.
pub fn load_config(arg: &str) -> Result<String, CliError> {
    if let Some((_, text)) = BUNDLED_CONFIGS.iter().find(|(name, _)| *name == arg) {
        return Ok(text.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))
}

/// Parses and executes one subcommand; returns the output directory.
pub fn run(sub: Subcommand, config_arg: &str, opts: &RunOptions) -> Result<PathBuf, CliError> {
    let text = load_config(config_arg)?;
    let config_hash = output::hex_digest(text.as_bytes());
    let config = RunConfig::parse(&text)?;
    let out_dir = opts
        .out_override
        .clone()
        .or_else(|| std::env::var("UNRUH_OUT_DIR").ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(&config.output.directory));
    let execute = || runner::execute(sub, &config, &config_hash, &out_dir, opts);
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            pool.install(execute)?;
        }
        None => execute()?,
    }
    Ok(out_dir)
}
