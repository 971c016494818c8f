//! Channel draws, imperfect CSI, noisy transmission, detection and the SER
//! sweep.
//!
//! Every trial derives four independent ChaCha8 streams from `(seed, trial)`
//! (see [`Stream`]), so results do not depend on thread scheduling or on
//! which methods are enabled. The noise draw of a trial is shared by all
//! methods and scaled per SNR point.

use std::time::Instant;

use onebit_core::constellation::nearest_symbol;
use onebit_core::precoders::{self, MAX_ENUMERATION_DIM};
use onebit_core::{
    build_system, CMatrix, Complex64, MessageVector, Method, PrecodeResult, QamSpec, SymbolIndex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decision size handed to the ZF-based precoders. Both are invariant to
/// it once the output is power-normalized.
const ZF_TAU: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub nt: usize,
    pub k: usize,
    /// `n` of 4^n-QAM.
    pub order: usize,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub epsilon: f64,
    pub seed: u64,
    #[serde(with = "method_names")]
    pub methods: Vec<Method>,
    /// Drop the receiver noise (`ρ → ∞`).
    #[serde(default)]
    pub noiseless: bool,
    /// Record precoding wall time. Off by default so output stays
    /// reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            nt: 64,
            k: 8,
            order: 2,
            snr_db: (0..=7).map(|i| 2.0 * i as f64).collect(),
            trials: 10_000,
            epsilon: 0.0,
            seed: 1,
            methods: vec![Method::FGreedy, Method::Qlp, Method::Qzf, Method::Zf],
            noiseless: false,
            timing: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.k < 1 || self.nt < self.k {
            return fail(format!(
                "need Nt >= K >= 1, got Nt={} K={}",
                self.nt, self.k
            ));
        }
        QamSpec::new(self.order)?;
        if self.trials < 1 {
            return fail("trials must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return fail(format!("epsilon must lie in [0, 1], got {}", self.epsilon));
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return fail("snr grid must be non-empty and finite".into());
        }
        if self.methods.is_empty() {
            return fail("no methods selected".into());
        }
        if self.methods.contains(&Method::ExhaustiveMilp) && 2 * self.nt > MAX_ENUMERATION_DIM {
            return fail(format!(
                "exhaustive search needs 2Nt <= {MAX_ENUMERATION_DIM}, got Nt={}",
                self.nt
            ));
        }
        Ok(())
    }
}

pub(crate) mod method_names {
    use onebit_core::Method;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(methods: &[Method], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(methods.iter().map(|m| m.name()))
    }

    pub fn serialize_one<S: Serializer>(method: &Method, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(method.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Method>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names
            .iter()
            .map(|n| n.parse().map_err(D::Error::custom))
            .collect()
    }
}

/// Per-trial random streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Channel = 0,
    Message = 1,
    Noise = 2,
    Csi = 3,
}

pub fn trial_rng(seed: u64, trial: usize, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 2) | stream as u64);
    rng
}

/// `CN(0, 1)`: real and imaginary parts each `N(0, 1/2)`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// I.i.d. Rayleigh channel, `K × Nt`.
pub fn sample_channel<R: Rng + ?Sized>(k: usize, nt: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(k, nt, |_, _| complex_normal(rng))
}

/// `√(1-ε) H + √ε E` with `E` i.i.d. `CN(0, 1)`.
pub fn corrupt_csi<R: Rng + ?Sized>(h: &CMatrix, epsilon: f64, rng: &mut R) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Config(format!(
            "epsilon must lie in [0, 1], got {epsilon}"
        )));
    }
    if epsilon == 0.0 {
        return Ok(h.clone());
    }
    let a = (1.0 - epsilon).sqrt();
    let b = epsilon.sqrt();
    Ok(CMatrix::from_fn(h.rows(), h.cols(), |r, c| {
        a * h[(r, c)] + b * complex_normal(rng)
    }))
}

/// Uniform message vector.
pub fn sample_message<R: Rng + ?Sized>(k: usize, spec: &QamSpec, rng: &mut R) -> MessageVector {
    let indices = (0..k)
        .map(|_| SymbolIndex::from_linear(spec.order(), rng.random_range(0..spec.len())))
        .collect();
    MessageVector::new(indices, spec).expect("indices drawn from the constellation")
}

/// `√ρ H x + z` for a given noise vector. Passing `None` is the noiseless
/// limit.
pub fn transmit_with(
    h: &CMatrix,
    x: &[Complex64],
    rho: f64,
    noise: Option<&[Complex64]>,
) -> Vec<Complex64> {
    let hx = h.mul_vec(x).expect("transmit vector matches channel width");
    let amp = rho.sqrt();
    match noise {
        Some(z) => hx.iter().zip(z).map(|(s, z)| amp * s + z).collect(),
        None => hx.iter().map(|s| amp * s).collect(),
    }
}

/// `√ρ H x + z` with fresh `z ~ CN(0, I)`.
pub fn transmit<R: Rng + ?Sized>(
    h: &CMatrix,
    x: &[Complex64],
    rho: f64,
    rng: &mut R,
) -> Vec<Complex64> {
    let z: Vec<Complex64> = (0..h.rows()).map(|_| complex_normal(rng)).collect();
    transmit_with(h, x, rho, Some(&z))
}

/// Minimum-distance detection of `y / √ρ` at decision size `tau`; `None`
/// when the precoder produced no usable decision size.
pub fn detect(y: Complex64, tau: f64, rho: f64, spec: &QamSpec) -> Option<SymbolIndex> {
    if !(tau > 0.0) || !(rho > 0.0) {
        return None;
    }
    Some(nearest_symbol(y / rho.sqrt(), tau, spec))
}

/// One (method, SNR) cell of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct CellStats {
    pub method: Method,
    pub snr_db: f64,
    pub symbol_errors: u64,
    pub symbols_sent: u64,
}

impl CellStats {
    pub fn ser(&self) -> f64 {
        self.symbol_errors as f64 / self.symbols_sent as f64
    }
}

/// Per-method totals that do not depend on the SNR.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodStats {
    pub method: Method,
    pub mean_objective: f64,
    /// Trials whose objective was `≤ 0`.
    pub infeasible_count: u64,
    /// Greedy steps that kept the worse sign; zero for other methods.
    pub step_violations: u64,
    /// Mean precoding time per trial in milliseconds, when recorded.
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SerStats {
    pub config: SimConfig,
    /// Row-major over `methods × snr_db`.
    pub cells: Vec<CellStats>,
    pub methods: Vec<MethodStats>,
}

impl SerStats {
    pub fn cell(&self, method: Method, snr_db: f64) -> Option<&CellStats> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.snr_db == snr_db)
    }

    pub fn ser_curve(&self, method: Method) -> Vec<f64> {
        self.cells
            .iter()
            .filter(|c| c.method == method)
            .map(|c| c.ser())
            .collect()
    }

    pub fn method(&self, method: Method) -> Option<&MethodStats> {
        self.methods.iter().find(|m| m.method == method)
    }
}

/// Everything one trial contributes.
struct TrialOutcome {
    /// `[method][snr]`
    errors: Vec<Vec<u32>>,
    objective: Vec<f64>,
    infeasible: Vec<bool>,
    violations: Vec<u32>,
    nanos: Vec<u128>,
}

/// Precodes with every requested method. F-greedy and QLP share one LP
/// solve unless timing is on.
/// Result, greedy step violations and precoding nanoseconds per method.
type Precoded = Vec<(PrecodeResult, u32, u128)>;

fn precode_all(
    cfg: &SimConfig,
    spec: &QamSpec,
    h_est: &CMatrix,
    s: &MessageVector,
) -> std::result::Result<Precoded, (Method, onebit_core::Error)> {
    let sys = build_system(h_est, s, spec).map_err(|e| (cfg.methods[0], e))?;
    let needs_lp = cfg
        .methods
        .iter()
        .any(|m| matches!(m, Method::FGreedy | Method::Qlp));
    let shared = if needs_lp && !cfg.timing {
        Some(precoders::solve_relaxation(&sys).map_err(|e| (Method::FGreedy, e))?)
    } else {
        None
    };
    let mut out = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let start = Instant::now();
        let wrap = |e| (method, e);
        let (result, violations) = match method {
            Method::FGreedy => {
                let (r, report) = match &shared {
                    Some(relaxed) => precoders::fgreedy_from_relaxation(&sys, relaxed),
                    None => precoders::fgreedy_with_report(&sys),
                }
                .map_err(wrap)?;
                (r, report.violations as u32)
            }
            Method::Qlp => {
                let r = match &shared {
                    Some(relaxed) => precoders::qlp_from_relaxation(&sys, relaxed),
                    None => precoders::qlp(&sys),
                }
                .map_err(wrap)?;
                (r, 0)
            }
            Method::Qzf => (precoders::qzf(h_est, s, spec, ZF_TAU).map_err(wrap)?, 0),
            Method::Zf => (precoders::zf(h_est, s, spec, ZF_TAU).map_err(wrap)?, 0),
            Method::ExhaustiveMilp => (precoders::exhaustive_milp(&sys).map_err(wrap)?, 0),
        };
        let nanos = if cfg.timing {
            start.elapsed().as_nanos()
        } else {
            0
        };
        out.push((result, violations, nanos));
    }
    Ok(out)
}

fn run_trial(cfg: &SimConfig, spec: &QamSpec, trial: usize) -> Result<TrialOutcome> {
    let h = sample_channel(
        cfg.k,
        cfg.nt,
        &mut trial_rng(cfg.seed, trial, Stream::Channel),
    );
    let s = sample_message(
        cfg.k,
        spec,
        &mut trial_rng(cfg.seed, trial, Stream::Message),
    );
    let h_est = corrupt_csi(
        &h,
        cfg.epsilon,
        &mut trial_rng(cfg.seed, trial, Stream::Csi),
    )?;
    let mut noise_rng = trial_rng(cfg.seed, trial, Stream::Noise);
    let z: Vec<Complex64> = (0..cfg.k).map(|_| complex_normal(&mut noise_rng)).collect();

    let results =
        precode_all(cfg, spec, &h_est, &s).map_err(|(method, source)| Error::Precoder {
            trial,
            seed: cfg.seed,
            method,
            source,
        })?;

    // Unit total transmit power: x / √(2Nt), detected at τ / √(2Nt).
    let power_scale = 1.0 / ((2 * cfg.nt) as f64).sqrt();
    let mut outcome = TrialOutcome {
        errors: Vec::with_capacity(results.len()),
        objective: Vec::with_capacity(results.len()),
        infeasible: Vec::with_capacity(results.len()),
        violations: Vec::with_capacity(results.len()),
        nanos: Vec::with_capacity(results.len()),
    };
    for (r, violations, nanos) in results {
        let x: Vec<Complex64> = r.x.iter().map(|v| v * power_scale).collect();
        let tau = r.tau * power_scale;
        let errors = cfg
            .snr_db
            .iter()
            .map(|&snr| {
                let rho = 10f64.powf(snr / 10.0);
                let y = transmit_with(&h, &x, rho, (!cfg.noiseless).then_some(&z[..]));
                y.iter()
                    .zip(s.indices())
                    .filter(|(yk, mu)| detect(**yk, tau, rho, spec).as_ref() != Some(*mu))
                    .count() as u32
            })
            .collect();
        outcome.errors.push(errors);
        outcome.objective.push(r.objective);
        outcome.infeasible.push(r.objective <= 0.0);
        outcome.violations.push(violations);
        outcome.nanos.push(nanos);
    }
    Ok(outcome)
}

/// Monte Carlo SER sweep. Trials run in parallel; totals are accumulated in
/// trial order so the result is independent of the thread count.
pub fn run_sweep(cfg: &SimConfig) -> Result<SerStats> {
    cfg.validate()?;
    let spec = QamSpec::new(cfg.order)?;
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, &spec, t))
        .collect::<Result<_>>()?;

    let m = cfg.methods.len();
    let n_snr = cfg.snr_db.len();
    let mut errors = vec![vec![0u64; n_snr]; m];
    let mut objective = vec![0.0f64; m];
    let mut infeasible = vec![0u64; m];
    let mut violations = vec![0u64; m];
    let mut nanos = vec![0u128; m];
    for o in &outcomes {
        for i in 0..m {
            for (acc, &e) in errors[i].iter_mut().zip(&o.errors[i]) {
                *acc += e as u64;
            }
            objective[i] += o.objective[i];
            infeasible[i] += o.infeasible[i] as u64;
            violations[i] += o.violations[i] as u64;
            nanos[i] += o.nanos[i];
        }
    }

    let symbols_sent = (cfg.trials * cfg.k) as u64;
    let trials = cfg.trials as f64;
    let cells = cfg
        .methods
        .iter()
        .enumerate()
        .flat_map(|(i, &method)| {
            let errors = &errors[i];
            cfg.snr_db
                .iter()
                .enumerate()
                .map(move |(j, &snr_db)| CellStats {
                    method,
                    snr_db,
                    symbol_errors: errors[j],
                    symbols_sent,
                })
        })
        .collect();
    let methods = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(i, &method)| MethodStats {
            method,
            mean_objective: objective[i] / trials,
            infeasible_count: infeasible[i],
            step_violations: violations[i],
            wall_time_ms: cfg.timing.then(|| nanos[i] as f64 / 1e6 / trials),
        })
        .collect();
    Ok(SerStats {
        config: cfg.clone(),
        cells,
        methods,
    })
}
