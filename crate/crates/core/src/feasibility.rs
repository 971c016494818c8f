//! Cascaded feasibility system.
//!
//! For user `k` with message digits `μ_k = (μ_{k,1}, …, μ_{k,n})` the
//! noiseless receive point `r_k = h_k x` lies in the decision region of its
//! symbol iff, for every level `l`,
//!
//! ```text
//! g(r_k) = M_{μ_{k,l}} α_{k,l} + τ b_{k,l},   α_{k,l} > 0
//! ```
//!
//! Stacking all users and levels and using `M̄⁻¹ = M̄` gives
//! `ᾱ = Λ x̃ - τ Λ_b` with `Λ = M̄ H̄` and `Λ_b = M̄ b̄`.
//!
//! Rows are ordered user-major, then level, then (real, imaginary):
//! row `2(k n + l) + c`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::constellation::{normalized_sum, QamSpec, SymbolIndex, BASIS};
use crate::linalg::{CMatrix, RMatrix};
use crate::{Error, Result};

/// One message index per user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageVector(Vec<SymbolIndex>);

impl MessageVector {
    pub fn new(indices: Vec<SymbolIndex>, spec: &QamSpec) -> Result<Self> {
        for idx in &indices {
            spec.check_index(idx)?;
        }
        Ok(Self(indices))
    }

    pub fn users(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[SymbolIndex] {
        &self.0
    }

    /// Constellation points at decision size `tau`.
    pub fn points(&self, tau: f64) -> Vec<Complex64> {
        self.0
            .iter()
            .map(|idx| crate::constellation::symbol_from_index(idx, tau))
            .collect()
    }

    /// Every message point-reflected through the origin.
    pub fn reflected(&self) -> Self {
        Self(self.0.iter().map(SymbolIndex::reflected).collect())
    }
}

/// Margin coefficients `ᾱ`, one per row of the feasibility system.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginVector(pub Vec<f64>);

impl MarginVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `true` iff every margin is strictly positive.
pub fn is_feasible(margins: &MarginVector) -> bool {
    !margins.0.is_empty() && margins.0.iter().all(|&a| a > 0.0)
}

/// `M_i = diag(Re c_i, Im c_i)`.
pub fn basis_matrix(i: usize) -> Result<[[f64; 2]; 2]> {
    let &(re, im) = BASIS.get(i).ok_or(Error::DigitOutOfRange(i))?;
    Ok([[re, 0.0], [0.0, im]])
}

/// Normalized bias vector of one user:
/// `g([0, 2^{n-1} s'¹, 2^{n-2} s'², …, 2 s'^{n-1}])`, where `s'^l` is the
/// normalized partial sum of the first `l` digits.
pub fn bias_vector(mu: &SymbolIndex) -> Vec<f64> {
    let digits = mu.digits();
    let n = digits.len();
    let mut out = Vec::with_capacity(2 * n);
    for l in 0..n {
        let (re, im) = normalized_sum(&digits[..l]);
        let scale = (1u64 << (n - l)) as f64;
        out.push(scale * re);
        out.push(scale * im);
    }
    out
}

/// The pair `(Λ, Λ_b)` for one channel realization and message vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilitySystem {
    lambda: RMatrix,
    lambda_b: Vec<f64>,
    order: usize,
    users: usize,
    antennas: usize,
    /// Channel and unit-decision-size message points the system was built
    /// from, when known.
    origin: Option<(CMatrix, Vec<Complex64>)>,
}

/// Builds `Λ = M̄ H̄` and `Λ_b = M̄ b̄` from a `K×Nt` channel.
pub fn build_system(h: &CMatrix, s: &MessageVector, spec: &QamSpec) -> Result<FeasibilitySystem> {
    let users = h.rows();
    let antennas = h.cols();
    let n = spec.order();
    if s.users() != users {
        return Err(Error::DimensionMismatch {
            what: "message vector length vs channel rows",
            expected: users,
            found: s.users(),
        });
    }
    for idx in s.indices() {
        spec.check_index(idx)?;
    }
    if h.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite { what: "channel" });
    }

    let rows = 2 * n * users;
    let mut lambda = RMatrix::zeros(rows, 2 * antennas);
    let mut lambda_b = Vec::with_capacity(rows);
    for (k, mu) in s.indices().iter().enumerate() {
        let bias = bias_vector(mu);
        for (l, &digit) in mu.digits().iter().enumerate() {
            let (sr, si) = BASIS[digit as usize];
            let base = 2 * (k * n + l);
            for j in 0..antennas {
                let z = h[(k, j)];
                // M_{μ_{k,l}} φ(h_kj)
                lambda[(base, 2 * j)] = sr * z.re;
                lambda[(base, 2 * j + 1)] = -sr * z.im;
                lambda[(base + 1, 2 * j)] = si * z.im;
                lambda[(base + 1, 2 * j + 1)] = si * z.re;
            }
            lambda_b.push(sr * bias[2 * l]);
            lambda_b.push(si * bias[2 * l + 1]);
        }
    }
    Ok(FeasibilitySystem {
        lambda,
        lambda_b,
        order: n,
        users,
        antennas,
        origin: Some((h.clone(), s.points(1.0))),
    })
}

impl FeasibilitySystem {
    /// Assembles a system from raw parts; mostly useful for tests and for
    /// re-loading dumped instances.
    pub fn from_parts(
        lambda: RMatrix,
        lambda_b: Vec<f64>,
        order: usize,
        users: usize,
        antennas: usize,
    ) -> Result<Self> {
        let rows = 2 * order * users;
        if lambda.rows() != rows || lambda_b.len() != rows {
            return Err(Error::DimensionMismatch {
                what: "feasibility rows",
                expected: rows,
                found: if lambda.rows() != rows {
                    lambda.rows()
                } else {
                    lambda_b.len()
                },
            });
        }
        if lambda.cols() != 2 * antennas {
            return Err(Error::DimensionMismatch {
                what: "feasibility columns",
                expected: 2 * antennas,
                found: lambda.cols(),
            });
        }
        Ok(Self {
            lambda,
            lambda_b,
            order,
            users,
            antennas,
            origin: None,
        })
    }

    /// Channel and message points at `τ = 1`; `None` for systems assembled
    /// from raw parts.
    pub fn origin(&self) -> Option<(&CMatrix, &[Complex64])> {
        self.origin.as_ref().map(|(h, p)| (h, p.as_slice()))
    }

    pub fn lambda(&self) -> &RMatrix {
        &self.lambda
    }

    pub fn lambda_b(&self) -> &[f64] {
        &self.lambda_b
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    /// `2nK`.
    pub fn num_rows(&self) -> usize {
        self.lambda_b.len()
    }

    /// `(user, level, component)` for a row index; component 0 is real.
    pub fn row_label(&self, row: usize) -> (usize, usize, usize) {
        let pair = row / 2;
        (pair / self.order, pair % self.order, row % 2)
    }

    fn check_x(&self, x: &[f64]) -> Result<()> {
        if x.len() != 2 * self.antennas {
            return Err(Error::DimensionMismatch {
                what: "real transmit vector",
                expected: 2 * self.antennas,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `Λ x̃`.
    pub fn receive_terms(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_x(x)?;
        self.lambda.mul_vec(x)
    }

    /// `ᾱ = Λ x̃ - τ Λ_b`.
    pub fn compute_margins(&self, x: &[f64], tau: f64) -> Result<MarginVector> {
        let mut alpha = self.receive_terms(x)?;
        for (a, b) in alpha.iter_mut().zip(&self.lambda_b) {
            *a -= tau * b;
        }
        Ok(MarginVector(alpha))
    }

    /// Largest `t ≥ 0` with `Λ_i x̃ - t (1 + Λ_{b,i}) ≥ 0` for every row, or 0
    /// when no positive `t` qualifies.
    ///
    /// This is the objective of the 1-bit problem with `τ = t` at a fixed
    /// `x̃`. Rows whose divisor `1 + Λ_{b,i}` is not positive can only impose
    /// lower bounds on `t` and are never divided through.
    pub fn max_tau_for(&self, x: &[f64]) -> Result<f64> {
        Ok(max_tau_from_terms(&self.receive_terms(x)?, &self.lambda_b))
    }

    /// Decision size maximizing `min ᾱ(τ)` over `τ ≥ 0`, with the attained
    /// minimum margin.
    ///
    /// `min ᾱ(τ)` is concave and piecewise linear, so the maximum sits on a
    /// breakpoint. Among maximizing breakpoints the largest is returned,
    /// which keeps the decision size as large as the margin allows.
    pub fn best_tau_for(&self, x: &[f64]) -> Result<(f64, f64)> {
        Ok(best_tau_from_terms(&self.receive_terms(x)?, &self.lambda_b))
    }

    /// Rows with `1 + Λ_{b,i} ≤ 0`, for which dividing `Λ_i x ≥ t (1 + Λ_{b,i})`
    /// by `1 + Λ_{b,i}` would flip the inequality.
    pub fn nonpositive_divisor_rows(&self) -> Vec<usize> {
        self.lambda_b
            .iter()
            .enumerate()
            .filter(|(_, &b)| 1.0 + b <= 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Relative slack when a lower and an upper bound on `t` coincide.
const PIN_TOL: f64 = 1e-12;

pub(crate) fn max_tau_from_terms(terms: &[f64], lambda_b: &[f64]) -> f64 {
    let mut upper = f64::INFINITY;
    let mut lower = 0.0_f64;
    for (&a, &b) in terms.iter().zip(lambda_b) {
        let coef = 1.0 + b;
        if coef > 0.0 {
            upper = upper.min(a / coef);
        } else if coef < 0.0 {
            if a < 0.0 {
                lower = lower.max(a / coef);
            }
        } else if a < 0.0 {
            return 0.0;
        }
    }
    // A pinned row makes `lower == upper` in exact arithmetic; allow rounding.
    if upper > 0.0 && lower <= upper + PIN_TOL * upper.abs().max(1.0) {
        upper
    } else {
        0.0
    }
}

pub(crate) fn best_tau_from_terms(terms: &[f64], lambda_b: &[f64]) -> (f64, f64) {
    // Group rows by slope; Λ_b takes few distinct (integer) values.
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for (&a, &b) in terms.iter().zip(lambda_b) {
        match groups.iter_mut().find(|(slope, _)| *slope == b) {
            Some(g) => g.1 = g.1.min(a),
            None => groups.push((b, a)),
        }
    }
    let eval = |tau: f64| {
        groups
            .iter()
            .map(|&(b, a)| a - tau * b)
            .fold(f64::INFINITY, f64::min)
    };
    let mut candidates = Vec::with_capacity(1 + groups.len() * groups.len());
    candidates.push(0.0);
    for (i, &(bi, ai)) in groups.iter().enumerate() {
        for &(bj, aj) in &groups[i + 1..] {
            let tau = (ai - aj) / (bi - bj);
            if tau.is_finite() && tau > 0.0 {
                candidates.push(tau);
            }
        }
    }
    let mut best_tau = 0.0;
    let mut best_val = f64::NEG_INFINITY;
    for &tau in &candidates {
        let v = eval(tau);
        if v > best_val || (v == best_val && tau > best_tau) {
            best_val = v;
            best_tau = tau;
        }
    }
    (best_tau, best_val)
}
