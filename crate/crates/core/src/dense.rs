//! Dense square complex matrices and LU inversion.

use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::scalar::{one, zero, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T: Real> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    /// Rank-one projector `|v><v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |r, c| v[r] * v[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Complex<T>] {
        &mut self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    /// `self + s * other`, in place.
    pub fn axpy(&mut self, s: Complex<T>, other: &Self) {
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).map(|i| self[(i, i)]).fold(zero(), |a, b| a + b)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_residual(&self) -> T {
        let n = self.n;
        let mut worst = T::zero();
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `Tr(A M)` for a sparse `A`, without forming the product.
    pub fn trace_with(&self, a: &crate::sparse::SparseMatrix<T>) -> Complex<T> {
        let mut s = zero();
        for (r, c, v) in a.triplets() {
            s += v * self[(c, r)];
        }
        s
    }

    /// Inverse by LU decomposition with partial pivoting.
    ///
    /// Returns `None` when the smallest pivot magnitude is at most `pivot_tol`.
    pub fn inverse(&self, pivot_tol: T) -> Option<Self> {
        let n = self.n;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|r| (r, lu[(r, k)].norm()))
                .fold((k, T::neg_infinity()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pmag > pivot_tol) {
                return None;
            }
            if p != k {
                for c in 0..n {
                    lu.data.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f == zero() {
                    continue;
                }
                for c in k + 1..n {
                    let u = lu[(k, c)];
                    lu[(r, c)] -= f * u;
                }
            }
        }
        let mut inv = Self::zeros(n);
        for col in 0..n {
            // solve L U x = P e_col
            let mut x: Vec<Complex<T>> = perm.iter().map(|&p| if p == col { one() } else { zero() }).collect();
            for r in 0..n {
                for k in 0..r {
                    let l = lu[(r, k)];
                    let xk = x[k];
                    x[r] -= l * xk;
                }
            }
            for r in (0..n).rev() {
                for k in r + 1..n {
                    let u = lu[(r, k)];
                    let xk = x[k];
                    x[r] -= u * xk;
                }
                x[r] = x[r] / lu[(r, r)];
            }
            for r in 0..n {
                inv[(r, col)] = x[r];
            }
        }
        Some(inv)
    }
}

impl<T: Real> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.n + c]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.n + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn inverse_roundtrip() {
        let m = DenseMatrix::<f64>::from_fn(3, |r, col| {
            let shift = if r == col { 5.0 } else { 0.0 };
            c((r * 3 + col) as f64 + 1.0 + shift, (r as f64) - (col as f64))
        });
        let inv = m.inverse(1e-10).unwrap();
        assert!(m.mul(&inv).max_abs_diff(&DenseMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn singular_is_rejected() {
        let m = DenseMatrix::<f64>::from_fn(2, |_, _| c(1.0, 0.0));
        assert!(m.inverse(1e-10).is_none());
    }
}
