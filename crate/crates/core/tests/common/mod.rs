#![allow(dead_code)]

use onebit_core::{CMatrix, Complex64, MessageVector, QamSpec, SymbolIndex};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn cn(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn channel(k: usize, nt: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(k, nt, |_, _| cn(rng))
}

pub fn message(k: usize, spec: &QamSpec, rng: &mut impl Rng) -> MessageVector {
    let idx = (0..k)
        .map(|_| SymbolIndex::from_linear(spec.order(), rng.random_range(0..spec.len())))
        .collect();
    MessageVector::new(idx, spec).unwrap()
}

/// Point of a digit vector straight from the trig form of the basis:
/// `c_i = √2 exp(j(π/4 + iπ/2))`.
pub fn trig_point(digits: &[u8], tau: f64) -> Complex64 {
    let n = digits.len();
    digits
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (l, &d)| {
            let angle = std::f64::consts::FRAC_PI_4 + d as f64 * std::f64::consts::FRAC_PI_2;
            let c = Complex64::from_polar(std::f64::consts::SQRT_2, angle);
            acc + c * (tau * (1u64 << (n - 1 - l)) as f64)
        })
}

/// Margins from complex arithmetic: at level `l` of user `k`, the receive
/// value relative to the partial-sum center of the first `l` digits, read
/// in the coordinates of base region `μ_l`.
pub fn reference_margins(y: &[Complex64], msg: &[Vec<u8>], tau: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for (yk, digits) in y.iter().zip(msg) {
        let n = digits.len();
        for l in 0..n {
            let center = trig_point(&digits[..l], tau) * (1u64 << (n - l)) as f64;
            let dir = trig_point(&digits[l..=l], 1.0);
            let d = yk - center;
            out.push(dir.re.signum() * d.re);
            out.push(dir.im.signum() * d.im);
        }
    }
    out
}
