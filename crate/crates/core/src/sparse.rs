//! Row-compressed sparse complex matrices.

use num_complex::Complex;

use crate::dense::DenseMatrix;
use crate::scalar::{zero, Real};

/// Sparse complex matrix stored as sorted per-row `(column, value)` lists.
///
/// Explicit zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T: Real> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Complex<T>)>>,
}

impl<T: Real> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Complex::new(T::one(), T::zero()); n])
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let rows = diag
            .iter()
            .enumerate()
            .map(|(i, &v)| if v == zero() { Vec::new() } else { vec![(i, v)] })
            .collect();
        Self { nrows: diag.len(), ncols: diag.len(), rows }
    }

    /// Builds a matrix from unordered triplets; duplicates are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex<T>)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, Complex<T>)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, Complex<T>)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != zero());
            *row = merged;
        }
        Self { nrows, ncols, rows }
    }

    pub fn from_dense(m: &DenseMatrix<T>) -> Self {
        let n = m.dim();
        Self::from_triplets(
            n,
            n,
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| (r, c, m[(r, c)])),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Complex<T>)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        match self.rows[r].binary_search_by_key(&c, |&(cc, _)| cc) {
            Ok(k) => self.rows[r][k].1,
            Err(_) => zero(),
        }
    }

    /// All nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex<T>)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self::from_triplets(self.nrows, self.ncols, self.triplets().map(|(r, c, v)| (r, c, f(v))))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|v| v * s)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch in add");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let pick = match (a.get(i), b.get(j)) {
                        (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                            i += 1;
                            j += 1;
                            (ca, va + vb)
                        }
                        (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                            i += 1;
                            (ca, va)
                        }
                        (Some(&(ca, va)), None) => {
                            i += 1;
                            (ca, va)
                        }
                        (_, Some(&(cb, vb))) => {
                            j += 1;
                            (cb, vb)
                        }
                        (None, None) => unreachable!(),
                    };
                    if pick.1 != zero() {
                        out.push(pick);
                    }
                }
                out
            })
            .collect();
        Self { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in mul");
        let mut acc = vec![zero::<T>(); other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.ncols];
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        if !mark[c] {
                            mark[c] = true;
                            touched.push(c);
                        }
                        acc[c] += a * b;
                    }
                }
                touched.sort_unstable();
                let out = touched
                    .iter()
                    .filter_map(|&c| {
                        let v = acc[c];
                        acc[c] = zero();
                        mark[c] = false;
                        (v != zero()).then_some((c, v))
                    })
                    .collect();
                touched.clear();
                out
            })
            .collect();
        Self { nrows: self.nrows, ncols: other.ncols, rows }
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut y = vec![zero(); self.nrows];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn matvec_into(&self, x: &[Complex<T>], y: &mut [Complex<T>]) {
        debug_assert_eq!(x.len(), self.ncols);
        for (yi, row) in y.iter_mut().zip(&self.rows) {
            let mut s = zero();
            for &(c, v) in row {
                s += v * x[c];
            }
            *yi = s;
        }
    }

    /// Sparse-times-dense product `A M`.
    pub fn mul_dense(&self, m: &DenseMatrix<T>) -> DenseMatrix<T> {
        let n = m.dim();
        assert_eq!(self.ncols, n);
        let mut out = DenseMatrix::zeros(self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            let orow = out.row_mut(r);
            for &(k, a) in row {
                for (o, &b) in orow.iter_mut().zip(m.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        assert_eq!(self.nrows, self.ncols, "dense conversion requires a square matrix");
        let mut d = DenseMatrix::zeros(self.nrows);
        for (r, c, v) in self.triplets() {
            d[(r, c)] = v;
        }
        d
    }

    pub fn max_abs(&self) -> T {
        self.triplets().map(|(_, _, v)| v.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_abs()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).fold(zero(), |a, b| a + b)
    }
}
