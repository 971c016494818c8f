//! Validation of the relaxation and the 1-bit methods against exhaustive
//! search on small arrays.

use onebit_core::precoders::{self, MAX_ENUMERATION_DIM};
use onebit_core::{build_system, Method, PrecodeResult, QamSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::{sample_channel, sample_message, trial_rng, Stream};

/// Tolerance of the relaxation-dominance check `t_LP ≥ t*`.
pub const DOMINANCE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    pub nt: usize,
    pub k: usize,
    pub order: usize,
    pub instances: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            nt: 4,
            k: 2,
            order: 2,
            instances: 200,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MethodSummary {
    #[serde(serialize_with = "crate::sim::method_names::serialize_one")]
    pub method: Method,
    /// Mean of `min ᾱ` at the method's own decision size.
    pub mean_objective: f64,
    pub feasible: usize,
    /// Mean of `max_tau_for(x) / t*` over instances with `t* > 0`.
    pub mean_tau_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub config: OracleConfig,
    pub dominance_violations: usize,
    pub mean_t_lp: f64,
    pub mean_t_star: f64,
    /// `t_LP - t*` statistics.
    pub mean_gap: f64,
    pub max_gap: f64,
    pub min_gap: f64,
    pub positive_t_star: usize,
    pub methods: Vec<MethodSummary>,
    /// Mean best `min ᾱ` over sign vectors at `τ = t_LP`.
    pub mean_fixed_tau_optimum: f64,
    /// Instances where F-greedy attains that optimum.
    pub fgreedy_matches_fixed_tau_optimum: usize,
    pub greedy_step_violations: u64,
}

struct Sample {
    t_lp: f64,
    t_star: f64,
    fixed_opt: f64,
    results: Vec<PrecodeResult>,
    tau_ratios: Vec<Option<f64>>,
    violations: u64,
}

const METHODS: [Method; 3] = [Method::FGreedy, Method::Qlp, Method::Qzf];

fn sample(cfg: &OracleConfig, spec: &QamSpec, i: usize) -> Result<Sample> {
    let h = sample_channel(cfg.k, cfg.nt, &mut trial_rng(cfg.seed, i, Stream::Channel));
    let s = sample_message(cfg.k, spec, &mut trial_rng(cfg.seed, i, Stream::Message));
    let sys = build_system(&h, &s, spec)?;
    let wrap = |method| {
        move |source| Error::Precoder {
            trial: i,
            seed: cfg.seed,
            method,
            source,
        }
    };
    let relaxed = precoders::solve_relaxation(&sys).map_err(wrap(Method::FGreedy))?;
    let exact = precoders::exhaustive_milp(&sys).map_err(wrap(Method::ExhaustiveMilp))?;
    let (_, fixed_opt) = precoders::exhaustive_min_margin(&sys, relaxed.t)?;
    let (greedy, report) =
        precoders::fgreedy_from_relaxation(&sys, &relaxed).map_err(wrap(Method::FGreedy))?;
    let results = vec![
        greedy,
        precoders::qlp_from_relaxation(&sys, &relaxed).map_err(wrap(Method::Qlp))?,
        precoders::qzf(&h, &s, spec, 1.0).map_err(wrap(Method::Qzf))?,
    ];
    let tau_ratios = results
        .iter()
        .map(|r| {
            let t = sys.max_tau_for(&r.x_real)?;
            Ok((exact.tau > 0.0).then(|| t / exact.tau))
        })
        .collect::<Result<_>>()?;
    Ok(Sample {
        t_lp: relaxed.t,
        t_star: exact.tau,
        fixed_opt,
        results,
        tau_ratios,
        violations: report.violations as u64,
    })
}

pub fn run_oracle_suite(cfg: &OracleConfig) -> Result<OracleReport> {
    if 2 * cfg.nt > MAX_ENUMERATION_DIM {
        return Err(Error::Config(format!(
            "oracle suite needs 2Nt <= {MAX_ENUMERATION_DIM}, got Nt={}",
            cfg.nt
        )));
    }
    if cfg.k < 1 || cfg.nt < cfg.k || cfg.instances < 1 {
        return Err(Error::Config(
            "oracle suite needs Nt >= K >= 1 and instances >= 1".into(),
        ));
    }
    let spec = QamSpec::new(cfg.order)?;
    let samples: Vec<Sample> = (0..cfg.instances)
        .into_par_iter()
        .map(|i| sample(cfg, &spec, i))
        .collect::<Result<_>>()?;

    let n = samples.len() as f64;
    let gaps: Vec<f64> = samples.iter().map(|s| s.t_lp - s.t_star).collect();
    let positive = samples.iter().filter(|s| s.t_star > 0.0).count();
    let methods = METHODS
        .iter()
        .enumerate()
        .map(|(i, &method)| {
            let ratios: Vec<f64> = samples.iter().filter_map(|s| s.tau_ratios[i]).collect();
            MethodSummary {
                method,
                mean_objective: samples.iter().map(|s| s.results[i].objective).sum::<f64>() / n,
                feasible: samples
                    .iter()
                    .filter(|s| s.results[i].objective > 0.0)
                    .count(),
                mean_tau_ratio: if ratios.is_empty() {
                    f64::NAN
                } else {
                    ratios.iter().sum::<f64>() / ratios.len() as f64
                },
            }
        })
        .collect();
    Ok(OracleReport {
        config: cfg.clone(),
        dominance_violations: gaps.iter().filter(|&&g| g < -DOMINANCE_TOL).count(),
        mean_t_lp: samples.iter().map(|s| s.t_lp).sum::<f64>() / n,
        mean_t_star: samples.iter().map(|s| s.t_star).sum::<f64>() / n,
        mean_gap: gaps.iter().sum::<f64>() / n,
        max_gap: gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
        positive_t_star: positive,
        methods,
        mean_fixed_tau_optimum: samples.iter().map(|s| s.fixed_opt).sum::<f64>() / n,
        fgreedy_matches_fixed_tau_optimum: samples
            .iter()
            .filter(|s| s.results[0].objective >= s.fixed_opt - 1e-12)
            .count(),
        greedy_step_violations: samples.iter().map(|s| s.violations).sum(),
    })
}
