//! Batch driver for cumdev experiments: config parsing, seeded execution and
//! result files.

pub mod config;
pub mod experiments;
pub mod output;
pub mod registry;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use config::{ExperimentConfig, Format};
use output::{render, write_atomic, ResultRecord, Timing, BUILD_ID};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Applies overrides and picks the output path: `--out`, then the config's
/// `output.path`, then the config path with the format's extension.
pub fn effective_config(mut cfg: ExperimentConfig, config_path: &Path, o: &Overrides) -> (ExperimentConfig, PathBuf) {
    if let Some(seed) = o.seed {
        cfg.seed = seed;
    }
    if let Some(f) = o.format {
        cfg.output.format = f;
    }
    if let Some(out) = &o.out {
        cfg.output.path = Some(out.clone());
    }
    let target = cfg.output.path.clone().unwrap_or_else(|| config_path.with_extension(cfg.output.format.extension()));
    (cfg, target)
}

/// Runs a config file end to end and returns the record and where it went.
pub fn run_config(config_path: &Path, o: &Overrides) -> Result<(ResultRecord, PathBuf), CliError> {
    let cfg = ExperimentConfig::load(config_path)?;
    let (cfg, target) = effective_config(cfg, config_path, o);
    cfg.check_shape()?;
    let mut resolved = cfg.clone();
    resolved.resolve_paths(config_path.parent().unwrap_or(Path::new(".")));
    let start = Instant::now();
    let payload = experiments::run(&resolved)?;
    let timing = Timing { elapsed_seconds: start.elapsed().as_secs_f64(), threads: rayon::current_num_threads() };
    let record = ResultRecord { config: cfg, build_id: BUILD_ID.to_string(), timing, payload };
    write_atomic(&target, &render(&record, record.config.output.format))?;
    Ok((record, target))
}
