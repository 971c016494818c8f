//! Experiment configuration: a flat `key = value` file, or a JSON run
//! manifest written by an earlier sweep, plus command-line overrides.
//!
//! ```text
//! # default run
//! nt = 64
//! k = 8
//! order = 2
//! trials = 10000
//! snr_db = 0:14:2      # start:stop:step, or a list: 0, 5, 10
//! epsilon = 0
//! seed = 1
//! methods = fgreedy, qlp, qzf, zf
//! noiseless = false
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use onebit_core::Method;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::SimConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub sim: SimConfig,
    /// CSV destination; stdout when absent.
    pub out: Option<PathBuf>,
    /// Also compare against the exhaustive oracle (requires `2Nt ≤ 24`).
    pub oracle: bool,
    pub bench_repeats: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            sim: SimConfig::default(),
            out: None,
            oracle: false,
            bench_repeats: 100,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.sim.validate()?;
        if self.oracle && 2 * self.sim.nt > onebit_core::precoders::MAX_ENUMERATION_DIM {
            return Err(Error::Config(format!(
                "oracle comparison needs 2Nt <= {}, got Nt={}",
                onebit_core::precoders::MAX_ENUMERATION_DIM,
                self.sim.nt
            )));
        }
        if self.bench_repeats == 0 {
            return Err(Error::Config("bench_repeats must be at least 1".into()));
        }
        Ok(())
    }
}

/// Reads either format, picking JSON by extension.
pub fn load(path: &Path) -> Result<ExperimentSpec> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
    {
        from_json(&text)
    } else {
        parse_flat(&text)
    }
}

/// Accepts a bare [`SimConfig`] object or a manifest carrying one under
/// `"config"`.
pub fn from_json(text: &str) -> Result<ExperimentSpec> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let config = value.get("config").cloned().unwrap_or(value);
    let sim: SimConfig = serde_json::from_value(config)?;
    Ok(ExperimentSpec {
        sim,
        ..ExperimentSpec::default()
    })
}

pub fn parse_flat(text: &str) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        set(&mut spec, key.trim(), value.trim())
            .map_err(|msg| Error::Config(format!("line {}: {msg}", lineno + 1)))?;
    }
    Ok(spec)
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("bad value `{value}` for `{key}`"))
}

/// Applies one setting.
pub fn set(spec: &mut ExperimentSpec, key: &str, value: &str) -> std::result::Result<(), String> {
    let sim = &mut spec.sim;
    match key.to_ascii_lowercase().as_str() {
        "nt" => sim.nt = num(key, value)?,
        "k" => sim.k = num(key, value)?,
        "order" | "n" => sim.order = num(key, value)?,
        "trials" => sim.trials = num(key, value)?,
        "epsilon" => sim.epsilon = num(key, value)?,
        "seed" => sim.seed = num(key, value)?,
        "snr_db" | "snr" => sim.snr_db = parse_grid(value)?,
        "methods" => sim.methods = parse_methods(value)?,
        "noiseless" => sim.noiseless = num(key, value)?,
        "timing" => sim.timing = num(key, value)?,
        "out" => spec.out = Some(PathBuf::from(value)),
        "oracle" => spec.oracle = num(key, value)?,
        "bench_repeats" => spec.bench_repeats = num(key, value)?,
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

/// `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_grid(value: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    if parts.len() == 3 {
        let [start, stop, step]: [f64; 3] = [
            num("snr_db", parts[0])?,
            num("snr_db", parts[1])?,
            num("snr_db", parts[2])?,
        ];
        if !(step > 0.0) || stop < start {
            return Err(format!("bad range `{value}`"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|i| start + step * i as f64).collect());
    }
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| num("snr_db", s))
        .collect()
}

pub fn parse_methods(value: &str) -> std::result::Result<Vec<Method>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Method>().map_err(|e| e.to_string()))
        .collect()
}
