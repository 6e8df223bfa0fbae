//! Operators on truncated multi-mode Fock spaces.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{one, zero, Real};
use crate::space::HilbertSpace;
use crate::sparse::SparseMatrix;

/// Sparse operator tagged with the space it acts on.
///
/// Binary operations first embed both operands into the union of their
/// spaces, acting as the identity on modes an operand does not mention.
/// Scalars live on the trivial space as 1x1 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T: Real> {
    space: HilbertSpace,
    matrix: SparseMatrix<T>,
}

impl<T: Real> Operator<T> {
    pub fn new(space: HilbertSpace, matrix: SparseMatrix<T>) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::ShapeMismatch { rows: matrix.nrows(), cols: matrix.ncols(), dim });
        }
        Ok(Self { space, matrix })
    }

    pub fn scalar(z: Complex<T>) -> Self {
        Self { space: HilbertSpace::trivial(), matrix: SparseMatrix::diagonal(&[z]) }
    }

    pub fn real(x: T) -> Self {
        Self::scalar(Complex::new(x, T::zero()))
    }

    pub fn zero() -> Self {
        Self::scalar(zero())
    }

    pub fn one() -> Self {
        Self::scalar(one())
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        Self { space: space.clone(), matrix: SparseMatrix::identity(space.dim()) }
    }

    /// Truncated annihilation operator, `<n|a|n+1> = sqrt(n+1)`.
    pub fn destroy(label: &str, dim: usize) -> Result<Self> {
        let space = HilbertSpace::single(label, dim)?;
        let matrix = SparseMatrix::from_triplets(
            dim,
            dim,
            (0..dim.saturating_sub(1))
                .map(|n| (n, n + 1, Complex::new(T::lit((n + 1) as f64).sqrt(), T::zero()))),
        );
        Self::new(space, matrix)
    }

    pub fn create(label: &str, dim: usize) -> Result<Self> {
        Ok(Self::destroy(label, dim)?.adjoint())
    }

    pub fn number(label: &str, dim: usize) -> Result<Self> {
        let diag: Vec<Complex<T>> = (0..dim).map(|n| Complex::new(T::lit(n as f64), T::zero())).collect();
        Self::new(HilbertSpace::single(label, dim)?, SparseMatrix::diagonal(&diag))
    }

    /// `|row><col|` on a single mode.
    pub fn transition(label: &str, dim: usize, row: usize, col: usize) -> Result<Self> {
        Self::new(HilbertSpace::single(label, dim)?, SparseMatrix::from_triplets(dim, dim, [(row, col, one())]))
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &SparseMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_scalar(&self) -> bool {
        self.space.is_trivial()
    }

    pub fn as_scalar(&self) -> Option<Complex<T>> {
        self.is_scalar().then(|| self.matrix.get(0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Re-expresses the operator on a larger space.
    pub fn embed(&self, target: &HilbertSpace) -> Result<Self> {
        if &self.space == target {
            return Ok(self.clone());
        }
        if !target.contains(&self.space) {
            target.union(&self.space)?;
            return Err(Error::Model(format!("cannot embed operator on {} into {}", self.space, target)));
        }
        let tstrides = target.strides();
        let own: Vec<(usize, usize)> = self
            .space
            .modes()
            .iter()
            .map(|m| {
                let p = target.position(&m.label).expect("contained mode");
                (m.dim, tstrides[p])
            })
            .collect();
        // flat offsets over every digit combination of the modes we lack
        let mut offsets = vec![0usize];
        for (p, m) in target.modes().iter().enumerate() {
            if self.space.position(&m.label).is_none() {
                let stride = tstrides[p];
                offsets = offsets
                    .iter()
                    .flat_map(|&o| (0..m.dim).map(move |d| o + d * stride))
                    .collect();
            }
        }
        let place = |mut idx: usize| {
            let mut out = 0;
            for &(dim, stride) in own.iter().rev() {
                out += (idx % dim) * stride;
                idx /= dim;
            }
            out
        };
        let triplets = self.matrix.triplets().flat_map(|(r, c, v)| {
            let (br, bc) = (place(r), place(c));
            offsets.iter().map(move |&o| (br + o, bc + o, v))
        });
        let d = target.dim();
        Ok(Self { space: target.clone(), matrix: SparseMatrix::from_triplets(d, d, triplets.collect::<Vec<_>>()) })
    }

    fn unified(&self, other: &Self) -> Result<(Self, Self)> {
        if self.space == other.space {
            return Ok((self.clone(), other.clone()));
        }
        let u = self.space.union(&other.space)?;
        Ok((self.embed(&u)?, other.embed(&u)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unified(other)?;
        Ok(Self { matrix: a.matrix.add(&b.matrix), space: a.space })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unified(other)?;
        Ok(Self { matrix: a.matrix.sub(&b.matrix), space: a.space })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let Some(z) = self.as_scalar() {
            return Ok(other.scale(z));
        }
        if let Some(z) = other.as_scalar() {
            return Ok(self.scale(z));
        }
        let (a, b) = self.unified(other)?;
        Ok(Self { matrix: a.matrix.mul(&b.matrix), space: a.space })
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.scale(z) }
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex::new(-T::one(), T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.adjoint() }
    }

    /// `Im{A} = (A - A^dagger) / 2i`.
    pub fn im(&self) -> Self {
        let d = self.matrix.sub(&self.matrix.adjoint());
        let half_over_i = Complex::new(T::zero(), -T::lit(0.5));
        Self { space: self.space.clone(), matrix: d.scale(half_over_i) }
    }

    /// `max |A - B|` over matrix entries after embedding into a common space.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        let (a, b) = self.unified(other)?;
        Ok(a.matrix.max_abs_diff(&b.matrix))
    }

    pub fn hermiticity_residual(&self) -> T {
        self.matrix.max_abs_diff(&self.matrix.adjoint())
    }

    /// Swaps two equal-dimension modes (relabeling `a <-> b`).
    pub fn swap_modes(&self, first: &str, second: &str) -> Result<Self> {
        let (p, q) = match (self.space.position(first), self.space.position(second)) {
            (Some(p), Some(q)) => (p, q),
            _ => return Ok(self.clone()),
        };
        let modes = self.space.modes();
        if modes[p].dim != modes[q].dim {
            return Err(Error::ModeConflict { label: second.to_string(), first: modes[p].dim, second: modes[q].dim });
        }
        let strides = self.space.strides();
        let dims: Vec<usize> = modes.iter().map(|m| m.dim).collect();
        let remap = |idx: usize| {
            let mut digits: Vec<usize> = (0..dims.len()).map(|k| (idx / strides[k]) % dims[k]).collect();
            digits.swap(p, q);
            digits.iter().zip(&strides).map(|(d, s)| d * s).sum::<usize>()
        };
        let d = self.dim();
        let matrix = SparseMatrix::from_triplets(d, d, self.matrix.triplets().map(|(r, c, v)| (remap(r), remap(c), v)));
        Ok(Self { space: self.space.clone(), matrix })
    }
}
