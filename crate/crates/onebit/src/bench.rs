//! Precoding run time versus array size.

use std::time::Instant;

use onebit_core::precoders;
use onebit_core::{build_system, Method, QamSpec};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::{sample_channel, sample_message, trial_rng, Stream};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchConfig {
    pub nts: Vec<usize>,
    pub k: usize,
    pub order: usize,
    pub repeats: usize,
    pub seed: u64,
    #[serde(serialize_with = "crate::sim::method_names::serialize")]
    pub methods: Vec<Method>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            nts: vec![16, 32, 64, 128],
            k: 8,
            order: 2,
            repeats: 100,
            seed: 1,
            methods: vec![Method::FGreedy, Method::Qlp, Method::Qzf, Method::Zf],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    #[serde(serialize_with = "crate::sim::method_names::serialize_one")]
    pub method: Method,
    pub nt: usize,
    pub repeats: usize,
    pub mean_ms: f64,
}

/// Times every method on the same instances, one call at a time on the
/// current thread. F-greedy and QLP each include their own LP solve.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.repeats == 0 || cfg.nts.iter().any(|&nt| nt < cfg.k) || cfg.k == 0 {
        return Err(Error::Config(
            "bench needs repeats >= 1 and Nt >= K >= 1".into(),
        ));
    }
    if cfg.methods.contains(&Method::ExhaustiveMilp) {
        return Err(Error::Config("exhaustive search is not benchmarked".into()));
    }
    let spec = QamSpec::new(cfg.order)?;
    let mut rows = Vec::new();
    for &nt in &cfg.nts {
        let mut total = vec![0.0f64; cfg.methods.len()];
        // one untimed round to warm caches
        for rep in 0..=cfg.repeats {
            let h = sample_channel(cfg.k, nt, &mut trial_rng(cfg.seed, rep, Stream::Channel));
            let s = sample_message(cfg.k, &spec, &mut trial_rng(cfg.seed, rep, Stream::Message));
            for (slot, &method) in total.iter_mut().zip(&cfg.methods) {
                let start = Instant::now();
                let result = match method {
                    Method::FGreedy => {
                        build_system(&h, &s, &spec).and_then(|sys| precoders::fgreedy(&sys))
                    }
                    Method::Qlp => build_system(&h, &s, &spec).and_then(|sys| precoders::qlp(&sys)),
                    Method::Qzf => precoders::qzf(&h, &s, &spec, 1.0),
                    Method::Zf => precoders::zf(&h, &s, &spec, 1.0),
                    Method::ExhaustiveMilp => unreachable!(),
                };
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                result.map_err(|source| Error::Precoder {
                    trial: rep,
                    seed: cfg.seed,
                    method,
                    source,
                })?;
                if rep > 0 {
                    *slot += elapsed;
                }
            }
        }
        for (&method, t) in cfg.methods.iter().zip(total) {
            rows.push(BenchRow {
                method,
                nt,
                repeats: cfg.repeats,
                mean_ms: t / cfg.repeats as f64,
            });
        }
    }
    Ok(rows)
}

pub fn mean_ms(rows: &[BenchRow], method: Method, nt: usize) -> Option<f64> {
    rows.iter()
        .find(|r| r.method == method && r.nt == nt)
        .map(|r| r.mean_ms)
}
