//! CSV and JSON output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::{SerStats, SimConfig};

pub const CSV_HEADER: [&str; 9] = [
    "method",
    "snr_db",
    "epsilon",
    "trials",
    "symbol_errors",
    "ser",
    "mean_objective",
    "infeasible_count",
    "wall_time_ms",
];

#[derive(Serialize)]
struct Row<'a> {
    method: &'a str,
    snr_db: f64,
    epsilon: f64,
    trials: usize,
    symbol_errors: u64,
    ser: f64,
    mean_objective: f64,
    infeasible_count: u64,
    wall_time_ms: Option<f64>,
}

/// One row per (method, SNR), methods in configuration order.
pub fn write_csv<W: Write>(stats: &SerStats, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for cell in &stats.cells {
        let m = stats
            .method(cell.method)
            .expect("every cell has method totals");
        w.serialize(Row {
            method: cell.method.name(),
            snr_db: cell.snr_db,
            epsilon: stats.config.epsilon,
            trials: stats.config.trials,
            symbol_errors: cell.symbol_errors,
            ser: cell.ser(),
            mean_objective: m.mean_objective,
            infeasible_count: m.infeasible_count,
            wall_time_ms: m.wall_time_ms,
        })?;
    }
    w.flush().map_err(|source| Error::Io {
        path: PathBuf::from("<csv>"),
        source,
    })?;
    Ok(())
}

pub fn csv_string(stats: &SerStats) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(stats, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a SimConfig,
    pub csv: Option<&'a Path>,
    pub started_unix_s: u64,
    pub wall_clock_ms: f64,
    pub step_violations: u64,
}

/// `<out>.manifest.json` next to a CSV file.
pub fn manifest_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}
