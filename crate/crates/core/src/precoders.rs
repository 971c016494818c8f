//! Precoding strategies.
//!
//! * [`fgreedy`]: solve the box relaxation, freeze `τ = t_LP`, then visit
//!   every real coordinate once and fix it to the sign with the larger
//!   minimum margin.
//! * [`qlp`], [`qzf`]: entrywise sign quantization of the relaxation and of
//!   zero forcing.
//! * [`zf`]: unquantized zero forcing, the infinite-resolution reference.
//! * [`exhaustive_milp`]: exact optimum of the 1-bit problem by enumeration,
//!   for tiny arrays only.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::constellation::{g_inv, g_map, QamSpec};
use crate::feasibility::{build_system, FeasibilitySystem, MessageVector};
use crate::linalg::{hermitian_solve, CMatrix};
use crate::lp::{self, LpStatus};
use crate::{Error, Result};

/// Largest `2Nt` accepted by the exhaustive enumerations.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// Relative pivot threshold for declaring `HHᴴ` singular.
const ZF_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    FGreedy,
    Qlp,
    Qzf,
    Zf,
    ExhaustiveMilp,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::FGreedy,
        Method::Qlp,
        Method::Qzf,
        Method::Zf,
        Method::ExhaustiveMilp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::FGreedy => "fgreedy",
            Method::Qlp => "qlp",
            Method::Qzf => "qzf",
            Method::Zf => "zf",
            Method::ExhaustiveMilp => "milp",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "fgreedy" | "f-greedy" => Ok(Method::FGreedy),
            "qlp" => Ok(Method::Qlp),
            "qzf" => Ok(Method::Qzf),
            "zf" => Ok(Method::Zf),
            "milp" | "exhaustive" | "exhaustivemilp" => Ok(Method::ExhaustiveMilp),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrecodeResult {
    pub method: Method,
    /// Complex transmit vector, `Nt` entries.
    pub x: Vec<Complex64>,
    /// `g(x)`, `2Nt` entries.
    pub x_real: Vec<f64>,
    /// Decision size the receivers should detect with.
    pub tau: f64,
    /// `min ᾱ` at `(x_real, tau)`.
    pub objective: f64,
    /// Whether every entry of `x_real` is exactly ±1.
    pub quantized: bool,
}

impl PrecodeResult {
    fn evaluate(
        method: Method,
        sys: &FeasibilitySystem,
        x_real: Vec<f64>,
        tau: f64,
    ) -> Result<Self> {
        let objective = sys.compute_margins(&x_real, tau)?.min();
        let quantized = x_real.iter().all(|&v| v == 1.0 || v == -1.0);
        Ok(Self {
            method,
            x: g_inv(&x_real)?,
            x_real,
            tau,
            objective,
            quantized,
        })
    }
}

/// `sign`, with `sign(0) = +1`.
pub fn sign_quantize(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&a| if a < 0.0 { -1.0 } else { 1.0 })
        .collect()
}

/// Optimal point of the box relaxation.
#[derive(Clone, Debug, PartialEq)]
pub struct Relaxation {
    pub x: Vec<f64>,
    pub t: f64,
    pub iterations: usize,
}

/// Solves the relaxation with the simplex started from [`relaxation_start`].
pub fn solve_relaxation(sys: &FeasibilitySystem) -> Result<Relaxation> {
    solve_relaxation_from(sys, &relaxation_start(sys))
}

/// Sign pattern of zero forcing toward the message points. Most optimal
/// relaxed entries sit on these bounds, so the simplex only has to move the
/// few that do not. Falls back to the origin for systems without a channel
/// or with a singular one.
pub fn relaxation_start(sys: &FeasibilitySystem) -> Vec<f64> {
    sys.origin()
        .and_then(|(h, points)| zf_direction(h, points).ok())
        .map(|x| sign_quantize(&g_map(&x)))
        .unwrap_or_else(|| vec![0.0; 2 * sys.antennas()])
}

/// Relaxation with the simplex started at `x0` (and `t = 0`).
pub fn solve_relaxation_from(sys: &FeasibilitySystem, x0: &[f64]) -> Result<Relaxation> {
    let program = lp::build_relaxation(sys);
    let mut start = x0.to_vec();
    start.push(0.0);
    let sol = lp::solve_from(&program, &start, &lp::SimplexOptions::default());
    if sol.status != LpStatus::Optimal {
        return Err(lp::failure(&program, &sol));
    }
    let nx = 2 * sys.antennas();
    Ok(Relaxation {
        x: sol.values[..nx].to_vec(),
        t: sol.values[nx],
        iterations: sol.iterations,
    })
}

/// Bookkeeping of one greedy pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GreedyReport {
    pub steps: usize,
    /// Updates where the kept sign had a smaller minimum margin than the
    /// rejected one. Always zero unless margins turn NaN.
    pub violations: usize,
}

/// One coordinate pass: `x̃_i ← argmax_{j ∈ {-1, 1}} min(Λ x̃ - τ Λ_b)` for
/// `i = 1…2Nt` in natural order, ties to +1.
pub fn greedy_refine(
    sys: &FeasibilitySystem,
    start: &[f64],
    tau: f64,
) -> Result<(Vec<f64>, GreedyReport)> {
    let mut alpha = sys.compute_margins(start, tau)?.0;
    let mut x = start.to_vec();
    let columns = sys.lambda().transpose();
    let mut report = GreedyReport::default();
    for (i, xi) in x.iter_mut().enumerate() {
        let col = columns.row(i);
        let mut min_minus = f64::INFINITY;
        let mut min_plus = f64::INFINITY;
        for (&a, &c) in alpha.iter().zip(col) {
            min_minus = min_minus.min(a + c * (-1.0 - *xi));
            min_plus = min_plus.min(a + c * (1.0 - *xi));
        }
        let (next, kept, rejected) = if min_plus >= min_minus {
            (1.0, min_plus, min_minus)
        } else {
            (-1.0, min_minus, min_plus)
        };
        report.steps += 1;
        if !(kept >= rejected) {
            report.violations += 1;
        }
        let delta = next - *xi;
        if delta != 0.0 {
            for (a, &c) in alpha.iter_mut().zip(col) {
                *a += c * delta;
            }
        }
        *xi = next;
    }
    Ok((x, report))
}

/// LP relaxation followed by the greedy 1-bit pass.
pub fn fgreedy(sys: &FeasibilitySystem) -> Result<PrecodeResult> {
    fgreedy_with_report(sys).map(|(r, _)| r)
}

pub fn fgreedy_with_report(sys: &FeasibilitySystem) -> Result<(PrecodeResult, GreedyReport)> {
    let relaxed = solve_relaxation(sys)?;
    fgreedy_from_relaxation(sys, &relaxed)
}

pub fn fgreedy_from_relaxation(
    sys: &FeasibilitySystem,
    relaxed: &Relaxation,
) -> Result<(PrecodeResult, GreedyReport)> {
    let (x, report) = greedy_refine(sys, &relaxed.x, relaxed.t)?;
    Ok((
        PrecodeResult::evaluate(Method::FGreedy, sys, x, relaxed.t)?,
        report,
    ))
}

/// Sign quantization of the relaxation, detected with `τ = t_LP`.
pub fn qlp(sys: &FeasibilitySystem) -> Result<PrecodeResult> {
    let relaxed = solve_relaxation(sys)?;
    qlp_from_relaxation(sys, &relaxed)
}

pub fn qlp_from_relaxation(sys: &FeasibilitySystem, relaxed: &Relaxation) -> Result<PrecodeResult> {
    PrecodeResult::evaluate(Method::Qlp, sys, sign_quantize(&relaxed.x), relaxed.t)
}

/// `Hᴴ (H Hᴴ)⁻¹ p` without normalization.
fn zf_direction(h: &CMatrix, points: &[Complex64]) -> Result<Vec<Complex64>> {
    if points.len() != h.rows() {
        return Err(Error::DimensionMismatch {
            what: "message vector length vs channel rows",
            expected: h.rows(),
            found: points.len(),
        });
    }
    let hh = h.adjoint();
    let gram = h.mul_mat(&hh)?;
    let z = hermitian_solve(&gram, points, ZF_RANK_TOL)?;
    hh.mul_vec(&z)
}

/// Infinite-resolution zero forcing, scaled to `‖x‖² = 2Nt`. The reported
/// `τ` is `tau_zf` times the same scale, so `H x` lands exactly on the
/// constellation points at the reported decision size.
pub fn zf(h: &CMatrix, s: &MessageVector, spec: &QamSpec, tau_zf: f64) -> Result<PrecodeResult> {
    let sys = build_system(h, s, spec)?;
    let x = zf_direction(h, &s.points(tau_zf))?;
    let energy: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    let scale = libm::sqrt(2.0 * h.cols() as f64 / energy);
    let x: Vec<Complex64> = x.into_iter().map(|z| z * scale).collect();
    PrecodeResult::evaluate(Method::Zf, &sys, g_map(&x), tau_zf * scale)
}

/// Sign quantization of zero forcing. The decision size is the one that
/// maximizes the minimum margin of the quantized vector.
pub fn qzf(h: &CMatrix, s: &MessageVector, spec: &QamSpec, tau_zf: f64) -> Result<PrecodeResult> {
    let sys = build_system(h, s, spec)?;
    let x = sign_quantize(&g_map(&zf_direction(h, &s.points(tau_zf))?));
    let (mut tau, _) = sys.best_tau_for(&x)?;
    if tau <= 0.0 {
        // Margin peaks as τ → 0 (all-outer symbols): τ = 0 is not decodable,
        // so take the largest τ whose min margin is still at least τ.
        tau = sys.max_tau_for(&x)?;
    }
    PrecodeResult::evaluate(Method::Qzf, &sys, x, tau)
}

fn enumeration_guard(sys: &FeasibilitySystem) -> Result<usize> {
    let dim = 2 * sys.antennas();
    if dim > MAX_ENUMERATION_DIM {
        return Err(Error::EnumerationTooLarge {
            dimension: dim,
            max: MAX_ENUMERATION_DIM,
        });
    }
    Ok(dim)
}

/// Sign vectors in lexicographic order (−1 before +1, first entry most
/// significant).
fn sign_vector(dim: usize, mask: u64) -> Vec<f64> {
    (0..dim)
        .map(|j| {
            if (mask >> (dim - 1 - j)) & 1 == 1 {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}

/// Exact 1-bit optimum of `max t` s.t. `Λ_i x̃ ≥ t (1 + Λ_{b,i})`, found by
/// enumerating all `2^{2Nt}` sign vectors. Ties go to the lexicographically
/// smallest vector. The result carries `τ = t*`.
pub fn exhaustive_milp(sys: &FeasibilitySystem) -> Result<PrecodeResult> {
    let dim = enumeration_guard(sys)?;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0..1u64 << dim {
        let x = sign_vector(dim, mask);
        let t = sys.max_tau_for(&x)?;
        if best.as_ref().is_none_or(|(bt, _)| t > *bt) {
            best = Some((t, x));
        }
    }
    let (t, x) = best.expect("at least one sign vector");
    PrecodeResult::evaluate(Method::ExhaustiveMilp, sys, x, t)
}

/// Best sign vector for the greedy criterion at a fixed decision size:
/// `max_x min(Λ x̃ - τ Λ_b)` over all sign vectors, lexicographic ties.
pub fn exhaustive_min_margin(sys: &FeasibilitySystem, tau: f64) -> Result<(Vec<f64>, f64)> {
    let dim = enumeration_guard(sys)?;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0..1u64 << dim {
        let x = sign_vector(dim, mask);
        let v = sys.compute_margins(&x, tau)?.min();
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, x));
        }
    }
    let (v, x) = best.expect("at least one sign vector");
    Ok((x, v))
}
