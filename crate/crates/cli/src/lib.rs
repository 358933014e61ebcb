//! Experiment runner for the damped Boussinesq spectral lab.
//!
//! A run reads a TOML configuration, executes one experiment on top of
//! `boussinesq-core` and leaves `series.csv`, `fits.csv` and `meta.json` in
//! the output directory.

pub mod config;
pub mod experiment;
pub mod output;

use std::io;
use std::path::Path;
use std::time::Instant;

pub use config::{parse_config, ConfigError, ExperimentConfig, ExperimentKind};
pub use experiment::{run_experiment, Check, Report};

/// Runs the experiment and writes its artifacts to `out`.
pub fn run_to_dir(kind: ExperimentKind, config: &ExperimentConfig, out: &Path) -> io::Result<Report> {
    let start = Instant::now();
    let report = run_experiment(kind, config);
    let meta = output::Meta::new(&report, config, start.elapsed().as_secs_f64());
    output::write_artifacts(out, &report, &meta)?;
    Ok(report)
}
