//! 4^n-QAM constellation machinery.
//!
//! Every point of a 4^n-QAM constellation is indexed by a length-n
//! quaternary vector `(i_1, …, i_n)` and reconstructed from the four basis
//! symbols `c_i = ±1 ± j` as
//!
//! ```text
//! s = τ · Σ_{l=1}^{n} 2^{n-l} c_{i_l}
//! ```
//!
//! Real expansions use the interleaved layout `(Re x_1, Im x_1, Re x_2, …)`
//! everywhere in this crate.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::{CMatrix, RMatrix};
use crate::{Error, Result};

/// Largest supported order; 4^8 = 65536 points.
pub const MAX_ORDER: usize = 8;

/// Strict-positivity threshold for base-region coefficients.
pub const MEMBERSHIP_EPS: f64 = 1e-12;

/// `(Re c_i, Im c_i)` for `i = 0..4`, i.e. `√2·e^{jπ(1+2i)/4}` evaluated exactly.
pub(crate) const BASIS: [(f64, f64); 4] = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];

/// Interleaves real and imaginary parts: `[x_1, x_2] ↦ [Re x_1, Im x_1, Re x_2, Im x_2]`.
pub fn g_map(x: &[Complex64]) -> Vec<f64> {
    x.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Inverse of [`g_map`].
pub fn g_inv(v: &[f64]) -> Result<Vec<Complex64>> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddLength(v.len()));
    }
    Ok(v.chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect())
}

/// The 2×2 real block `[[Re x, -Im x], [Im x, Re x]]`.
pub fn phi_scalar(x: Complex64) -> [[f64; 2]; 2] {
    [[x.re, -x.im], [x.im, x.re]]
}

/// Real-valued expansion of a complex `K×Nt` matrix into `2K×2Nt`, so that
/// `g(H x) = φ(H) g(x)`. A column vector is the `Nt = 1` case and stacks the
/// blocks vertically.
pub fn phi_expand(h: &CMatrix) -> RMatrix {
    RMatrix::from_fn(2 * h.rows(), 2 * h.cols(), |r, c| {
        phi_scalar(h[(r / 2, c / 2)])[r % 2][c % 2]
    })
}

/// Basis symbol `c_i`.
pub fn basis_symbol(i: usize) -> Result<Complex64> {
    BASIS
        .get(i)
        .map(|&(re, im)| Complex64::new(re, im))
        .ok_or(Error::DigitOutOfRange(i))
}

/// A length-n quaternary index `(i_1, …, i_n)` of a 4^n-QAM point.
///
/// Ordering is lexicographic, with `i_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolIndex(Vec<u8>);

impl SymbolIndex {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::DigitOutOfRange(d as usize));
        }
        if digits.is_empty() || digits.len() > MAX_ORDER {
            return Err(Error::InvalidOrder {
                order: digits.len(),
                max: MAX_ORDER,
            });
        }
        Ok(Self(digits))
    }

    /// Index whose digits are the base-4 expansion of `linear`, `i_1` first.
    pub fn from_linear(order: usize, linear: usize) -> Self {
        debug_assert!(linear < 1usize << (2 * order));
        let digits = (0..order)
            .map(|l| ((linear >> (2 * (order - 1 - l))) & 3) as u8)
            .collect();
        Self(digits)
    }

    pub fn to_linear(&self) -> usize {
        self.0.iter().fold(0, |acc, &d| (acc << 2) | d as usize)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Point reflection through the origin, `i ↦ (i + 2) mod 4` per digit.
    pub fn reflected(&self) -> Self {
        Self(self.0.iter().map(|&d| (d + 2) % 4).collect())
    }
}

impl fmt::Display for SymbolIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Normalized partial sum `Σ_{l=1}^{len} 2^{len-l} c_{d_l}` of a digit prefix.
pub(crate) fn normalized_sum(digits: &[u8]) -> (f64, f64) {
    digits.iter().fold((0.0, 0.0), |(re, im), &d| {
        let (cr, ci) = BASIS[d as usize];
        (2.0 * re + cr, 2.0 * im + ci)
    })
}

/// `τ · Σ_l 2^{n-l} c_{i_l}`.
pub fn symbol_from_index(idx: &SymbolIndex, tau: f64) -> Complex64 {
    let (re, im) = normalized_sum(idx.digits());
    Complex64::new(tau * re, tau * im)
}

/// Description of a 4^n-QAM constellation with unit decision size.
#[derive(Clone, Debug, PartialEq)]
pub struct QamSpec {
    order: usize,
    points: Vec<Complex64>,
}

impl QamSpec {
    pub fn new(order: usize) -> Result<Self> {
        if !(2..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder {
                order,
                max: MAX_ORDER,
            });
        }
        let points = (0..1usize << (2 * order))
            .map(|k| symbol_from_index(&SymbolIndex::from_linear(order, k), 1.0))
            .collect();
        Ok(Self { order, points })
    }

    /// `n` in 4^n-QAM.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of points, 4^n.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Normalized points (τ = 1) in lexicographic index order.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn indices(&self) -> impl Iterator<Item = SymbolIndex> + '_ {
        (0..self.len()).map(move |k| SymbolIndex::from_linear(self.order, k))
    }

    pub fn check_index(&self, idx: &SymbolIndex) -> Result<()> {
        if idx.order() != self.order {
            return Err(Error::DimensionMismatch {
                what: "symbol index length",
                expected: self.order,
                found: idx.order(),
            });
        }
        Ok(())
    }

    /// Minimum pairwise Euclidean distance of the normalized points.
    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (a, p) in self.points.iter().enumerate() {
            for q in &self.points[a + 1..] {
                best = best.min((p - q).norm_sqr());
            }
        }
        libm::sqrt(best)
    }

    /// Mean energy of the normalized points.
    pub fn mean_energy(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / self.len() as f64
    }
}

/// Whether `v - offset = α¹ m_i¹ + α² m_i²` with both `α > 0`.
///
/// `M_i` is diagonal with ±1 entries and self-inverse, so the coefficients
/// are `M_i (v - offset)`. Positivity uses the [`MEMBERSHIP_EPS`] threshold.
pub fn base_region_membership(v: [f64; 2], i: usize, offset: [f64; 2]) -> Result<bool> {
    let c = basis_symbol(i)?;
    let a1 = c.re * (v[0] - offset[0]);
    let a2 = c.im * (v[1] - offset[1]);
    Ok(a1 > MEMBERSHIP_EPS && a2 > MEMBERSHIP_EPS)
}

/// Linear index of the point nearest to `y` at decision size `tau`.
///
/// Exact ties resolve to the lexicographically smallest index.
pub fn nearest_linear(y: Complex64, tau: f64, spec: &QamSpec) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (k, p) in spec.points.iter().enumerate() {
        let d = (y - p * tau).norm_sqr();
        if d < best_d {
            best_d = d;
            best = k;
        }
    }
    best
}

/// Minimum-distance detection at decision size `tau`.
pub fn nearest_symbol(y: Complex64, tau: f64, spec: &QamSpec) -> SymbolIndex {
    SymbolIndex::from_linear(spec.order, nearest_linear(y, tau, spec))
}

/// Tests `g(y)` against the intersection of the `n` shifted base regions of
/// symbol `idx`. Level `l` uses base region `i_l` shifted by
/// `τ Σ_{m<l} 2^{n-m} c_{i_m}`; the first level is unshifted.
pub fn region_decomposition_check(y: Complex64, idx: &SymbolIndex, tau: f64) -> bool {
    let digits = idx.digits();
    let n = digits.len();
    let v = [y.re, y.im];
    for l in 0..n {
        let (pr, pi) = normalized_sum(&digits[..l]);
        let scale = tau * (1u64 << (n - l)) as f64;
        let offset = [scale * pr, scale * pi];
        // digits are validated on construction
        if !base_region_membership(v, digits[l] as usize, offset).unwrap_or(false) {
            return false;
        }
    }
    true
}
