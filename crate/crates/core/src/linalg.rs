//! Minimal dense row-major matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::{Error, Result};

pub type RMatrix = Matrix<f64>;
pub type CMatrix = Matrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::default(); rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn map<U: Copy + Default>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    /// `self · v`, accumulating each row left to right.
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch {
                what: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                for c in 0..other.cols {
                    out[(r, c)] = out[(r, c)] + a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

pub(crate) fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<Output = T>,
{
    a.iter()
        .zip(b)
        .fold(T::default(), |acc, (&x, &y)| acc + x * y)
}

impl CMatrix {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }
}

/// Solves `A z = b` for a Hermitian positive-definite `A` by Cholesky.
///
/// A pivot below `rel_tol · max diag(A)` is reported as rank deficiency.
pub fn hermitian_solve(a: &CMatrix, b: &[Complex64], rel_tol: f64) -> Result<Vec<Complex64>> {
    let n = a.rows();
    if a.cols() != n || b.len() != n {
        return Err(Error::DimensionMismatch {
            what: "hermitian system",
            expected: n,
            found: if a.cols() != n { a.cols() } else { b.len() },
        });
    }
    let scale = (0..n).map(|i| a[(i, i)].re).fold(0.0_f64, f64::max);
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut diag = a[(j, j)].re;
        for k in 0..j {
            diag -= l[(j, k)].norm_sqr();
        }
        if !(diag > rel_tol * scale) {
            return Err(Error::RankDeficient { pivot: diag });
        }
        let ljj = libm::sqrt(diag);
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut acc = a[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / ljj;
        }
    }
    // forward: L w = b
    let mut w = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = l[(i, k)] * w[k];
            w[i] -= t;
        }
        w[i] /= l[(i, i)];
    }
    // backward: L^H z = w
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = l[(k, i)].conj() * w[k];
            w[i] -= t;
        }
        w[i] /= l[(i, i)];
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = RMatrix::from_row_major(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(a.mul_vec(&[1.0, 0.0, -1.0]).unwrap(), vec![-2.0, -2.0]);
        let at = a.transpose();
        assert_eq!(at.row(2), &[3.0, 6.0]);
        let aat = a.mul_mat(&at).unwrap();
        assert_eq!(aat.as_slice(), &[14.0, 32.0, 32.0, 77.0]);
        assert!(a.mul_vec(&[1.0]).is_err());
    }

    #[test]
    fn hermitian_solve_recovers_solution() {
        let h = CMatrix::from_row_major(
            2,
            3,
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(-0.3, 0.2),
                Complex64::new(0.7, -1.1),
                Complex64::new(0.1, 0.9),
                Complex64::new(1.4, 0.0),
                Complex64::new(-0.6, -0.4),
            ],
        )
        .unwrap();
        let a = h.mul_mat(&h.adjoint()).unwrap();
        let z = vec![Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.25)];
        let b = a.mul_vec(&z).unwrap();
        let got = hermitian_solve(&a, &b, 1e-12).unwrap();
        for (g, e) in got.iter().zip(&z) {
            assert!((g - e).norm_sqr() < 1e-24);
        }
    }

    #[test]
    fn singular_system_is_rejected() {
        let one = Complex64::new(1.0, 0.0);
        let a = CMatrix::from_row_major(2, 2, vec![one, one, one, one]).unwrap();
        assert!(matches!(
            hermitian_solve(&a, &[one, one], 1e-12),
            Err(Error::RankDeficient { .. })
        ));
    }
}
