//! Simulation harness and command-line plumbing around `onebit-core`.
//!
//! * [`sim`]: Rayleigh channels, imperfect CSI, noisy transmission,
//!   detection and the parallel, seed-deterministic SER sweep.
//! * [`config`]: flat `key = value` experiment files and JSON manifests.
//! * [`report`]: CSV rows and run manifests.
//! * [`oracle`]: relaxation and 1-bit methods against exhaustive search.
//! * [`bench`]: precoding time versus array size.

// `!(a >= b)` is used on purpose so NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod config;
mod error;
pub mod oracle;
pub mod report;
pub mod sim;

use std::fs::File;
use std::io::{self, BufWriter};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use crate::config::ExperimentSpec;
pub use crate::error::{Error, Result};
pub use crate::sim::{run_sweep, SerStats, SimConfig};

/// Runs a sweep, writes the CSV (stdout when no path is set) and, for file
/// output, a `<out>.manifest.json` next to it.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<SerStats> {
    spec.validate()?;
    let started_unix_s = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let clock = Instant::now();
    let stats = run_sweep(&spec.sim)?;
    let wall_clock_ms = clock.elapsed().as_secs_f64() * 1e3;
    match &spec.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            report::write_csv(&stats, BufWriter::new(file))?;
            let manifest = report::Manifest {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                command: "sweep",
                config: &spec.sim,
                csv: Some(path),
                started_unix_s,
                wall_clock_ms,
                step_violations: stats.methods.iter().map(|m| m.step_violations).sum(),
            };
            report::write_json(&manifest, &report::manifest_path(path))?;
        }
        None => report::write_csv(&stats, io::stdout().lock())?,
    }
    Ok(stats)
}
