//! Dense bounded-variable primal simplex.
//!
//! Problems have the form
//!
//! ```text
//! maximize  cᵀv
//! s.t.      A v ≥ rhs
//!           l ≤ v ≤ u        (±∞ allowed)
//! ```
//!
//! Internally each row gets a surplus `s_i = A_i v - rhs_i ≥ 0`, and rows
//! that are violated at the starting point get an artificial variable for a
//! phase-1 solve. Nonbasic structurals start at the point of `[l, u]`
//! closest to zero, which need not be a bound; such variables are moved
//! onto a bound before the solution is returned, so an optimal solution is
//! always a vertex (free columns that cannot be pivoted stay at zero).
//!
//! Pricing is Dantzig's rule; after `stall_threshold` consecutive degenerate
//! steps the solver falls back to Bland's rule until the objective moves.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::feasibility::FeasibilitySystem;
use crate::linalg::RMatrix;
use crate::{Error, Result};

/// Primal feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-9;
/// Reduced-cost optimality tolerance.
pub const OPT_TOL: f64 = 1e-9;
/// Pivot elements at or below this magnitude are never used.
pub const PIVOT_TOL: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: RMatrix,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<f64>,
        constraints: RMatrix,
        rhs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        let n = objective.len();
        let dims = [
            ("constraint columns", constraints.cols()),
            ("lower bounds", lower.len()),
            ("upper bounds", upper.len()),
        ];
        for (what, found) in dims {
            if found != n {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: n,
                    found,
                });
            }
        }
        if rhs.len() != constraints.rows() {
            return Err(Error::DimensionMismatch {
                what: "rhs",
                expected: constraints.rows(),
                found: rhs.len(),
            });
        }
        if objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "objective" });
        }
        if constraints.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "constraint matrix",
            });
        }
        if rhs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "rhs" });
        }
        for (index, (&lo, &up)) in lower.iter().zip(&upper).enumerate() {
            if lo.is_nan()
                || up.is_nan()
                || lo > up
                || lo == f64::INFINITY
                || up == f64::NEG_INFINITY
            {
                return Err(Error::InvalidBounds {
                    index,
                    lower: lo,
                    upper: up,
                });
            }
        }
        Ok(Self {
            objective,
            constraints,
            rhs,
            lower,
            upper,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    /// `A v - rhs` per row.
    pub fn row_activity(&self, v: &[f64]) -> Vec<f64> {
        (0..self.num_constraints())
            .map(|i| {
                let a: f64 = self
                    .constraints
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum();
                a - self.rhs[i]
            })
            .collect()
    }

    /// Human-readable dump, one constraint per line, floats printed with
    /// round-trip precision.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{self}");
        out
    }
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("maximize")?;
        write_terms(f, &self.objective)?;
        f.write_str("\nsubject to\n")?;
        for i in 0..self.num_constraints() {
            write_terms(f, self.constraints.row(i))?;
            writeln!(f, " >= {:?}", self.rhs[i])?;
        }
        f.write_str("bounds\n")?;
        for (j, (lo, up)) in self.lower.iter().zip(&self.upper).enumerate() {
            writeln!(f, "{lo:?} <= v{j} <= {up:?}")?;
        }
        Ok(())
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coefs: &[f64]) -> fmt::Result {
    let mut any = false;
    for (j, &c) in coefs.iter().enumerate() {
        if c != 0.0 {
            write!(f, " {c:+?} v{j}")?;
            any = true;
        }
    }
    if !any {
        f.write_str(" 0")?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

/// Where a structural variable sits in the final basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStatus {
    Basic,
    AtLower,
    AtUpper,
    /// Nonbasic strictly between its bounds (only free columns that could
    /// not be pivoted into the basis).
    Between,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective_value: f64,
    /// Row multipliers `y ≥ 0` of `A v ≥ rhs`; empty unless optimal.
    pub duals: Vec<f64>,
    pub var_status: Vec<VarStatus>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexOptions {
    /// Defaults to `50 · (vars + constraints)`.
    pub max_iterations: Option<usize>,
    /// Consecutive degenerate steps before switching to Bland's rule.
    pub stall_threshold: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: None,
            stall_threshold: 1000,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpSolution {
    solve_with(lp, &SimplexOptions::default())
}

pub fn solve_with(lp: &LinearProgram, opts: &SimplexOptions) -> LpSolution {
    solve_from(lp, &vec![0.0; lp.num_vars()], opts)
}

/// Starts the nonbasic structurals at `start` (clamped into their bounds)
/// instead of at the point of the box closest to the origin. Rows the start
/// violates get phase-one artificials.
pub fn solve_from(lp: &LinearProgram, start: &[f64], opts: &SimplexOptions) -> LpSolution {
    let limit = opts
        .max_iterations
        .unwrap_or(50 * (lp.num_vars() + lp.num_constraints()));
    assert_eq!(start.len(), lp.num_vars(), "start point length");
    let mut tab = Tableau::new(lp, start, limit, opts.stall_threshold);
    let status = tab.run();
    tab.finish(lp, status)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

enum Step {
    Optimal,
    Unbounded,
}

struct Tableau {
    m: usize,
    n: usize,
    ncols: usize,
    /// `B⁻¹ [A | -I | artificial columns]`, row-major `m × ncols`.
    t: Vec<f64>,
    basis: Vec<usize>,
    /// Row of each basic column, `usize::MAX` when nonbasic.
    row_of: Vec<usize>,
    value: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    /// Reduced costs of the current phase.
    d: Vec<f64>,
    col: Vec<f64>,
    artificial_start: usize,
    objective: Vec<f64>,
    rhs: Vec<f64>,
    phase: Phase,
    iterations: usize,
    limit: usize,
    stall_threshold: usize,
    degenerate_run: usize,
}

struct Ratio {
    theta: f64,
    /// Leaving row and whether the leaving variable stops at its upper bound;
    /// `None` means the entering variable reaches its own bound first.
    leave: Option<(usize, bool)>,
}

const NONBASIC: usize = usize::MAX;
const RATIO_TIE: f64 = 1e-12;

impl Tableau {
    fn new(lp: &LinearProgram, start: &[f64], limit: usize, stall_threshold: usize) -> Self {
        let m = lp.num_constraints();
        let n = lp.num_vars();
        let start: Vec<f64> = start
            .iter()
            .zip(lp.lower.iter().zip(&lp.upper))
            .map(|(&v, (&lo, &up))| v.max(lo).min(up))
            .collect();
        let surplus = lp.row_activity(&start);
        let artificials = surplus.iter().filter(|&&s| s < -FEAS_TOL).count();
        let ncols = n + m + artificials;
        let artificial_start = n + m;

        let mut t = vec![0.0; m * ncols];
        let mut basis = vec![0; m];
        let mut row_of = vec![NONBASIC; ncols];
        let mut value = vec![0.0; ncols];
        let mut lower = vec![0.0; ncols];
        let mut upper = vec![f64::INFINITY; ncols];
        lower[..n].copy_from_slice(&lp.lower);
        upper[..n].copy_from_slice(&lp.upper);
        value[..n].copy_from_slice(&start);

        let mut art = artificial_start;
        for i in 0..m {
            let row = &mut t[i * ncols..(i + 1) * ncols];
            let a = lp.constraints.row(i);
            let b = if surplus[i] >= -FEAS_TOL {
                // surplus basic: B = -1 on this row
                for (dst, &src) in row[..n].iter_mut().zip(a) {
                    *dst = -src;
                }
                row[n + i] = 1.0;
                value[n + i] = surplus[i];
                n + i
            } else {
                row[..n].copy_from_slice(a);
                row[n + i] = -1.0;
                row[art] = 1.0;
                value[art] = -surplus[i];
                art += 1;
                art - 1
            };
            basis[i] = b;
            row_of[b] = i;
        }

        let mut tab = Self {
            m,
            n,
            ncols,
            t,
            basis,
            row_of,
            value,
            lower,
            upper,
            cost: vec![0.0; ncols],
            d: vec![0.0; ncols],
            col: vec![0.0; m],
            artificial_start,
            objective: lp.objective.clone(),
            rhs: lp.rhs.clone(),
            phase: Phase::One,
            iterations: 0,
            limit,
            stall_threshold,
            degenerate_run: 0,
        };
        if artificials == 0 {
            tab.enter_phase_two();
        } else {
            for c in &mut tab.cost[artificial_start..] {
                *c = -1.0;
            }
            tab.recompute_reduced_costs();
        }
        tab
    }

    fn run(&mut self) -> LpStatus {
        if self.phase == Phase::One {
            match self.optimize() {
                Err(()) => return LpStatus::IterationLimit,
                // the phase-1 objective is bounded above by zero
                Ok(Step::Unbounded) => return LpStatus::Infeasible,
                _ => {}
            }
            self.refresh_basic_values();
            let infeasibility: f64 = self.value[self.artificial_start..].iter().sum();
            let scale = 1.0 + self.rhs.iter().fold(0.0_f64, |a, r| a.max(r.abs()));
            if infeasibility > FEAS_TOL * scale {
                return LpStatus::Infeasible;
            }
            for j in self.artificial_start..self.ncols {
                self.upper[j] = 0.0;
                if self.row_of[j] == NONBASIC {
                    self.value[j] = 0.0;
                }
            }
            self.drive_out_artificials();
            self.refresh_basic_values();
            self.enter_phase_two();
        }
        loop {
            match self.optimize() {
                Err(()) => return LpStatus::IterationLimit,
                Ok(Step::Unbounded) => return LpStatus::Unbounded,
                _ => {}
            }
            match self.crossover() {
                Err(()) => return LpStatus::IterationLimit,
                Ok(false) => break,
                Ok(true) => {}
            }
        }
        self.refresh_basic_values();
        LpStatus::Optimal
    }

    fn optimize(&mut self) -> core::result::Result<Step, ()> {
        loop {
            let bland = self.degenerate_run >= self.stall_threshold;
            let Some((q, dir)) = self.price(bland) else {
                return Ok(Step::Optimal);
            };
            if self.iterations >= self.limit {
                return Err(());
            }
            self.iterations += 1;
            let ratio = self.ratio_test(q, dir, bland);
            if ratio.theta == f64::INFINITY {
                return Ok(Step::Unbounded);
            }
            if ratio.theta <= RATIO_TIE {
                self.degenerate_run += 1;
            } else {
                self.degenerate_run = 0;
            }
            self.apply(q, dir, &ratio);
        }
    }

    /// Moves nonbasic structurals sitting strictly inside their bounds onto
    /// a bound or into the basis. Returns whether anything moved.
    fn crossover(&mut self) -> core::result::Result<bool, ()> {
        let mut moved = false;
        for j in 0..self.n {
            if self.row_of[j] != NONBASIC
                || self.value[j] <= self.lower[j]
                || self.value[j] >= self.upper[j]
            {
                continue;
            }
            let first = if self.d[j] >= 0.0 { 1.0 } else { -1.0 };
            for dir in [first, -first] {
                let ratio = self.ratio_test(j, dir, false);
                if ratio.theta.is_finite() {
                    if self.iterations >= self.limit {
                        return Err(());
                    }
                    self.iterations += 1;
                    self.apply(j, dir, &ratio);
                    moved = true;
                    break;
                }
            }
        }
        Ok(moved)
    }

    fn price(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        let end = match self.phase {
            Phase::One => self.ncols,
            Phase::Two => self.artificial_start,
        };
        for j in 0..end {
            if self.row_of[j] != NONBASIC {
                continue;
            }
            let dj = self.d[j];
            let dir = if dj > OPT_TOL && self.value[j] < self.upper[j] {
                1.0
            } else if dj < -OPT_TOL && self.value[j] > self.lower[j] {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir));
            }
            if dj.abs() > best_score {
                best_score = dj.abs();
                best = Some((j, dir));
            }
        }
        best
    }

    fn ratio_test(&mut self, q: usize, dir: f64, bland: bool) -> Ratio {
        let ncols = self.ncols;
        for r in 0..self.m {
            self.col[r] = self.t[r * ncols + q];
        }
        let mut theta_row = f64::INFINITY;
        let mut leave: Option<(usize, bool)> = None;
        for r in 0..self.m {
            let a = self.col[r];
            if a.abs() <= PIVOT_TOL {
                continue;
            }
            let rate = -dir * a;
            let b = self.basis[r];
            let (limit, to_upper) = if rate < 0.0 {
                if self.lower[b] == f64::NEG_INFINITY {
                    continue;
                }
                ((self.value[b] - self.lower[b]).max(0.0) / -rate, false)
            } else {
                if self.upper[b] == f64::INFINITY {
                    continue;
                }
                ((self.upper[b] - self.value[b]).max(0.0) / rate, true)
            };
            let better = match leave {
                None => true,
                Some((lr, _)) => {
                    if limit < theta_row - RATIO_TIE {
                        true
                    } else if limit <= theta_row + RATIO_TIE {
                        if bland {
                            b < self.basis[lr]
                        } else {
                            a.abs() > self.col[lr].abs()
                        }
                    } else {
                        false
                    }
                }
            };
            if better {
                theta_row = theta_row.min(limit);
                leave = Some((r, to_upper));
            }
        }
        let own = if dir > 0.0 {
            self.upper[q] - self.value[q]
        } else {
            self.value[q] - self.lower[q]
        };
        if own <= theta_row {
            Ratio {
                theta: own,
                leave: None,
            }
        } else {
            Ratio {
                theta: theta_row,
                leave,
            }
        }
    }

    fn apply(&mut self, q: usize, dir: f64, ratio: &Ratio) {
        let theta = ratio.theta;
        if theta > 0.0 {
            for r in 0..self.m {
                let b = self.basis[r];
                self.value[b] -= dir * self.col[r] * theta;
            }
        }
        match ratio.leave {
            None => {
                self.value[q] = if dir > 0.0 {
                    self.upper[q]
                } else {
                    self.lower[q]
                };
            }
            Some((r, to_upper)) => {
                self.value[q] += dir * theta;
                let p = self.basis[r];
                self.value[p] = if to_upper {
                    self.upper[p]
                } else {
                    self.lower[p]
                };
                self.pivot(r, q);
            }
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let ncols = self.ncols;
        let p = self.basis[r];
        let piv = self.t[r * ncols + q];
        {
            let row = &mut self.t[r * ncols..(r + 1) * ncols];
            for v in row.iter_mut() {
                *v /= piv;
            }
            row[q] = 1.0;
        }
        let (before, rest) = self.t.split_at_mut(r * ncols);
        let (pivot_row, after) = rest.split_at_mut(ncols);
        for row in before
            .chunks_exact_mut(ncols)
            .chain(after.chunks_exact_mut(ncols))
        {
            let f = row[q];
            if f != 0.0 {
                for (v, &pr) in row.iter_mut().zip(pivot_row.iter()) {
                    *v -= f * pr;
                }
                row[q] = 0.0;
            }
        }
        let f = self.d[q];
        if f != 0.0 {
            for (dj, &pr) in self.d.iter_mut().zip(pivot_row.iter()) {
                *dj -= f * pr;
            }
        }
        self.d[q] = 0.0;
        self.basis[r] = q;
        self.row_of[q] = r;
        self.row_of[p] = NONBASIC;
        if p >= self.artificial_start {
            self.upper[p] = 0.0;
            self.value[p] = 0.0;
        }
    }

    /// Degenerate pivots replacing basic artificials (all at zero after a
    /// successful phase 1) with structural or surplus columns. Rows where no
    /// such column has a usable entry are redundant and keep their
    /// artificial fixed at zero.
    fn drive_out_artificials(&mut self) {
        let ncols = self.ncols;
        for r in 0..self.m {
            if self.basis[r] < self.artificial_start {
                continue;
            }
            let row = &self.t[r * ncols..(r + 1) * ncols];
            let mut best = None;
            let mut best_abs = 1e-9;
            for (j, &v) in row[..self.artificial_start].iter().enumerate() {
                if self.row_of[j] == NONBASIC && v.abs() > best_abs {
                    best_abs = v.abs();
                    best = Some(j);
                }
            }
            if let Some(q) = best {
                let p = self.basis[r];
                self.value[p] = 0.0;
                self.pivot(r, q);
            }
        }
    }

    fn enter_phase_two(&mut self) {
        self.phase = Phase::Two;
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        self.cost[..self.n].copy_from_slice(&self.objective);
        self.degenerate_run = 0;
        self.recompute_reduced_costs();
    }

    fn recompute_reduced_costs(&mut self) {
        let ncols = self.ncols;
        self.d.copy_from_slice(&self.cost);
        for r in 0..self.m {
            let cb = self.cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.t[r * ncols..(r + 1) * ncols];
                for (dj, &v) in self.d.iter_mut().zip(row) {
                    *dj -= cb * v;
                }
            }
        }
        for &b in &self.basis {
            self.d[b] = 0.0;
        }
    }

    /// `x_B = B⁻¹ rhs - Σ_{j ∉ B} (B⁻¹ a_j) x_j`, with `B⁻¹ = -T[:, surplus]`.
    fn refresh_basic_values(&mut self) {
        let ncols = self.ncols;
        for r in 0..self.m {
            let row = &self.t[r * ncols..(r + 1) * ncols];
            let mut v = 0.0;
            for i in 0..self.m {
                v -= row[self.n + i] * self.rhs[i];
            }
            for (j, &a) in row.iter().enumerate() {
                if self.row_of[j] == NONBASIC && a != 0.0 {
                    v -= a * self.value[j];
                }
            }
            self.value[self.basis[r]] = v;
        }
    }

    fn finish(self, lp: &LinearProgram, status: LpStatus) -> LpSolution {
        let values = self.value[..self.n].to_vec();
        let objective_value = values.iter().zip(&lp.objective).map(|(v, c)| v * c).sum();
        let duals = if status == LpStatus::Optimal {
            (0..self.m)
                .map(|i| {
                    (0..self.m)
                        .map(|r| self.cost[self.basis[r]] * self.t[r * self.ncols + self.n + i])
                        .sum()
                })
                .collect()
        } else {
            Vec::new()
        };
        let var_status = (0..self.n)
            .map(|j| {
                if self.row_of[j] != NONBASIC {
                    VarStatus::Basic
                } else if self.value[j] <= self.lower[j] {
                    VarStatus::AtLower
                } else if self.value[j] >= self.upper[j] {
                    VarStatus::AtUpper
                } else {
                    VarStatus::Between
                }
            })
            .collect();
        LpSolution {
            status,
            values,
            objective_value,
            duals,
            var_status,
            iterations: self.iterations,
        }
    }
}

/// Certificate tolerance of [`check_optimality`].
pub const CERT_TOL: f64 = 1e-7;

/// Independent optimality certificate.
///
/// Checks primal feasibility of `sol.values`, then builds the Lagrangian
/// upper bound `Σ_j max_{v_j ∈ [l_j,u_j]} d_j v_j - yᵀ rhs` with
/// `d = c + Aᵀy` from the reported multipliers (clipped to `y ≥ 0`). Any
/// such bound dominates every feasible objective, so a vanishing gap proves
/// optimality.
pub fn check_optimality(lp: &LinearProgram, sol: &LpSolution) -> bool {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    if sol.status != LpStatus::Optimal || sol.values.len() != n || sol.duals.len() != m {
        return false;
    }
    let v = &sol.values;
    if v.iter().any(|x| !x.is_finite()) {
        return false;
    }
    let in_box = v
        .iter()
        .zip(lp.lower.iter().zip(&lp.upper))
        .all(|(&x, (&l, &u))| x >= l - CERT_TOL && x <= u + CERT_TOL);
    if !in_box {
        return false;
    }
    if lp.row_activity(v).iter().any(|&s| s < -CERT_TOL) {
        return false;
    }
    if sol.duals.iter().any(|&y| !(y >= -CERT_TOL)) {
        return false;
    }
    let y: Vec<f64> = sol.duals.iter().map(|&y| y.max(0.0)).collect();
    let mut bound = -y.iter().zip(&lp.rhs).map(|(y, b)| y * b).sum::<f64>();
    for (j, &vj) in v.iter().enumerate() {
        let dj = lp.objective[j] + (0..m).map(|i| lp.constraints[(i, j)] * y[i]).sum::<f64>();
        let best = if dj > 0.0 {
            lp.upper[j]
        } else if dj < 0.0 {
            lp.lower[j]
        } else {
            0.0
        };
        if best.is_finite() {
            bound += dj * best;
        } else if dj.abs() <= CERT_TOL {
            bound += dj * vj;
        } else {
            return false;
        }
    }
    let primal: f64 = v.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();
    bound - primal <= CERT_TOL * (1.0 + primal.abs())
}

/// Box relaxation of the 1-bit max-min-margin problem with `τ = t`:
/// variables `(x̃_1, …, x̃_{2Nt}, t)`, maximize `t` subject to
/// `Λ_i x̃ - t (1 + Λ_{b,i}) ≥ 0`, `-1 ≤ x̃_j ≤ 1` and `t ≥ 0`.
pub fn build_relaxation(sys: &FeasibilitySystem) -> LinearProgram {
    let nx = 2 * sys.antennas();
    let rows = sys.num_rows();
    let lambda = sys.lambda();
    let constraints = RMatrix::from_fn(rows, nx + 1, |i, j| {
        if j < nx {
            lambda[(i, j)]
        } else {
            -(1.0 + sys.lambda_b()[i])
        }
    });
    let mut objective = vec![0.0; nx + 1];
    objective[nx] = 1.0;
    let mut lower = vec![-1.0; nx + 1];
    let mut upper = vec![1.0; nx + 1];
    lower[nx] = 0.0;
    upper[nx] = f64::INFINITY;
    LinearProgram {
        objective,
        constraints,
        rhs: vec![0.0; rows],
        lower,
        upper,
    }
}

/// Failure description carrying the instance dump.
pub(crate) fn failure(lp: &LinearProgram, sol: &LpSolution) -> Error {
    Error::LpFailed {
        status: sol.status,
        dump: format!("iterations: {}\n{}", sol.iterations, lp.dump()),
    }
}
