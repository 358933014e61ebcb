//! Artifact files. Each file is written to a temporary sibling and renamed
//! into place, so readers never observe a half-written file.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::ExperimentConfig;
use crate::experiment::{Check, Report};

pub const SERIES_FILE: &str = "series.csv";
pub const FITS_FILE: &str = "fits.csv";
pub const META_FILE: &str = "meta.json";

/// `t,label,value`, grouped by series in recording order.
pub fn series_csv(report: &Report) -> String {
    let mut out = String::from("t,label,value\n");
    for s in &report.series {
        for (t, v) in s.times.iter().zip(&s.values) {
            writeln!(out, "{t},{},{v}", s.label).expect("writing to a String");
        }
    }
    out
}

pub fn fits_csv(report: &Report) -> String {
    let mut out = String::from("label,exponent,intercept,r_squared,t_min,t_max\n");
    for f in &report.fits {
        let d = &f.fit;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            f.label, d.exponent, d.intercept, d.r_squared, d.window.0, d.window.1
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Debug, Serialize)]
pub struct Meta<'a> {
    pub experiment: &'a str,
    pub version: &'a str,
    pub seed: u64,
    pub config: &'a ExperimentConfig,
    pub wall_clock_seconds: f64,
    pub passed: bool,
    pub partial: bool,
    pub error: Option<&'a str>,
    pub checks: &'a [Check],
}

impl<'a> Meta<'a> {
    pub fn new(report: &'a Report, config: &'a ExperimentConfig, wall_clock_seconds: f64) -> Self {
        Meta {
            experiment: report.kind.as_str(),
            version: env!("CARGO_PKG_VERSION"),
            seed: config.seed,
            config,
            wall_clock_seconds,
            passed: report.passed(),
            partial: report.is_partial(),
            error: report.error.as_deref(),
            checks: &report.checks,
        }
    }
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> io::Result<()> {
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_artifacts(dir: &Path, report: &Report, meta: &Meta<'_>) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(meta).map_err(io::Error::other)?;
    write_atomic(dir, SERIES_FILE, &series_csv(report))?;
    write_atomic(dir, FITS_FILE, &fits_csv(report))?;
    write_atomic(dir, META_FILE, &(json + "\n"))
}
