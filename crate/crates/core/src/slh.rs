//! (S, L, H) triplets and the three circuit-algebra composition rules.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{one, Real};
use crate::space::HilbertSpace;
use crate::sparse::SparseMatrix;

/// Tolerance used for singular `1 - S_kl` in feedback.
pub const FEEDBACK_PIVOT_TOL: f64 = 1e-10;

/// Scattering matrix, coupling vector and Hamiltonian of an `n`-channel
/// component.
#[derive(Clone, Debug, PartialEq)]
pub struct SlhTriplet<T: Real> {
    s: Vec<Vec<Operator<T>>>,
    l: Vec<Operator<T>>,
    h: Operator<T>,
}

/// Residuals of the defining constraints of a triplet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residuals<T> {
    /// `max(|S^dagger S - 1|, |S S^dagger - 1|)`.
    pub unitarity: T,
    /// `|H - H^dagger|`.
    pub hermiticity: T,
}

impl<T: Real> Residuals<T> {
    pub fn within(&self, tol: T) -> bool {
        self.unitarity <= tol && self.hermiticity <= tol
    }
}

impl<T: Real> SlhTriplet<T> {
    pub fn new(s: Vec<Vec<Operator<T>>>, l: Vec<Operator<T>>, h: Operator<T>) -> Result<Self> {
        let n = l.len();
        if s.len() != n || s.iter().any(|row| row.len() != n) {
            return Err(Error::ChannelMismatch { left: s.len(), right: n });
        }
        let q = Self { s, l, h };
        q.space()?;
        Ok(q)
    }

    /// The zero-channel triplet, neutral for concatenation.
    pub fn trivial() -> Self {
        Self { s: Vec::new(), l: Vec::new(), h: Operator::zero() }
    }

    pub fn identity(n: usize) -> Self {
        let s = (0..n)
            .map(|r| (0..n).map(|c| if r == c { Operator::one() } else { Operator::zero() }).collect())
            .collect();
        Self { s, l: vec![Operator::zero(); n], h: Operator::zero() }
    }

    /// Static channel permutation with `(P)_{k,l} = delta_{k, sigma(l)}`.
    ///
    /// `image` is the 1-based image tuple `(sigma(1) .. sigma(n))`.
    pub fn permutation(image: &[usize]) -> Result<Self> {
        check_permutation(image)?;
        let n = image.len();
        let s = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| if image[l] == k + 1 { Operator::one() } else { Operator::zero() })
                    .collect()
            })
            .collect();
        Ok(Self { s, l: vec![Operator::zero(); n], h: Operator::zero() })
    }

    /// Static triplet from scalar entries.
    pub fn from_scalars(s: &[Vec<Complex<T>>], l: &[Complex<T>], h: T) -> Result<Self> {
        Self::new(
            s.iter().map(|row| row.iter().map(|&z| Operator::scalar(z)).collect()).collect(),
            l.iter().map(|&z| Operator::scalar(z)).collect(),
            Operator::real(h),
        )
    }

    pub fn cdim(&self) -> usize {
        self.l.len()
    }

    pub fn s(&self) -> &[Vec<Operator<T>>] {
        &self.s
    }

    pub fn s_entry(&self, row: usize, col: usize) -> &Operator<T> {
        &self.s[row][col]
    }

    pub fn l(&self) -> &[Operator<T>] {
        &self.l
    }

    pub fn h(&self) -> &Operator<T> {
        &self.h
    }

    /// Union of the spaces of every entry.
    pub fn space(&self) -> Result<HilbertSpace> {
        let mut space = self.h.space().clone();
        for op in self.s.iter().flatten().chain(&self.l) {
            space = space.union(op.space())?;
        }
        Ok(space)
    }

    /// Every entry embedded into the joint space.
    pub fn embedded(&self) -> Result<Self> {
        let space = self.space()?;
        self.embedded_in(&space)
    }

    pub fn embedded_in(&self, space: &HilbertSpace) -> Result<Self> {
        Ok(Self {
            s: self
                .s
                .iter()
                .map(|row| row.iter().map(|op| op.embed(space)).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            l: self.l.iter().map(|op| op.embed(space)).collect::<Result<_>>()?,
            h: self.h.embed(space)?,
        })
    }

    pub fn residuals(&self) -> Result<Residuals<T>> {
        let n = self.cdim();
        let mut unitarity = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut sds = Operator::zero();
                let mut ssd = Operator::zero();
                for m in 0..n {
                    sds = sds.add(&self.s[m][i].adjoint().mul(&self.s[m][j])?)?;
                    ssd = ssd.add(&self.s[i][m].mul(&self.s[j][m].adjoint())?)?;
                }
                let target = if i == j { Operator::one() } else { Operator::zero() };
                unitarity = unitarity.max(sds.max_abs_diff(&target)?).max(ssd.max_abs_diff(&target)?);
            }
        }
        Ok(Residuals { unitarity, hermiticity: self.h.hermiticity_residual() })
    }

    /// Largest elementwise difference between two triplets of equal arity.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.cdim() != other.cdim() {
            return Err(Error::ChannelMismatch { left: self.cdim(), right: other.cdim() });
        }
        let mut worst = self.h.max_abs_diff(&other.h)?;
        for (a, b) in self.s.iter().flatten().zip(other.s.iter().flatten()) {
            worst = worst.max(a.max_abs_diff(b)?);
        }
        for (a, b) in self.l.iter().zip(&other.l) {
            worst = worst.max(a.max_abs_diff(b)?);
        }
        Ok(worst)
    }

    /// `Q1 ⊞ Q2`: block-diagonal scattering, stacked couplings, summed Hamiltonians.
    pub fn concatenate(&self, other: &Self) -> Result<Self> {
        self.space()?.union(&other.space()?)?;
        let (n1, n2) = (self.cdim(), other.cdim());
        let n = n1 + n2;
        let s = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| match (r < n1, c < n1) {
                        (true, true) => self.s[r][c].clone(),
                        (false, false) => other.s[r - n1][c - n1].clone(),
                        _ => Operator::zero(),
                    })
                    .collect()
            })
            .collect();
        let l = self.l.iter().chain(&other.l).cloned().collect();
        Ok(Self { s, l, h: self.h.add(&other.h)? })
    }

    /// `self ◁ upstream`: all outputs of `upstream` feed the inputs of `self`.
    ///
    /// Returns `(S2 S1, L2 + S2 L1, H1 + H2 + Im{L2^dagger S2 L1})`.
    pub fn series(&self, upstream: &Self) -> Result<Self> {
        let n = self.cdim();
        if upstream.cdim() != n {
            return Err(Error::ChannelMismatch { left: n, right: upstream.cdim() });
        }
        let (s2, l2, s1, l1) = (&self.s, &self.l, &upstream.s, &upstream.l);
        let mut s = Vec::with_capacity(n);
        let mut s2l1 = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = Operator::zero();
                for k in 0..n {
                    acc = acc.add(&s2[i][k].mul(&s1[k][j])?)?;
                }
                row.push(acc);
            }
            s.push(row);
            let mut acc = Operator::zero();
            for k in 0..n {
                acc = acc.add(&s2[i][k].mul(&l1[k])?)?;
            }
            s2l1.push(acc);
        }
        let mut cross = Operator::zero();
        for (l2i, t) in l2.iter().zip(&s2l1) {
            cross = cross.add(&l2i.adjoint().mul(t)?)?;
        }
        let l = l2.iter().zip(&s2l1).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        let h = upstream.h.add(&self.h)?.add(&cross.im())?;
        Ok(Self { s, l, h })
    }

    /// `[Q]_{k -> l}` with 1-based channel indices.
    pub fn feedback(&self, k: usize, l: usize) -> Result<Self> {
        let n = self.cdim();
        if n < 2 {
            return Err(Error::FeedbackArity(n));
        }
        for index in [k, l] {
            if index == 0 || index > n {
                return Err(Error::ChannelIndex { index, cdim: n });
            }
        }
        let (k0, l0) = (k - 1, l - 1);
        let inv = inverse_one_minus(&self.s[k0][l0]).ok_or(Error::SingularFeedback { k, l })?;
        let rows: Vec<usize> = (0..n).filter(|&r| r != k0).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != l0).collect();
        // (S_jl) (1 - S_kl)^-1 for every surviving row j
        let col_factor: Vec<Operator<T>> =
            rows.iter().map(|&r| self.s[r][l0].mul(&inv)).collect::<Result<_>>()?;
        let mut s = Vec::with_capacity(n - 1);
        for (ri, &r) in rows.iter().enumerate() {
            let mut row = Vec::with_capacity(n - 1);
            for &c in &cols {
                row.push(self.s[r][c].add(&col_factor[ri].mul(&self.s[k0][c])?)?);
            }
            s.push(row);
        }
        let lk = &self.l[k0];
        let new_l = rows
            .iter()
            .enumerate()
            .map(|(ri, &r)| self.l[r].add(&col_factor[ri].mul(lk)?))
            .collect::<Result<Vec<_>>>()?;
        let mut ls = Operator::zero();
        for j in 0..n {
            ls = ls.add(&self.l[j].adjoint().mul(&self.s[j][l0])?)?;
        }
        let h = self.h.add(&ls.mul(&inv)?.mul(lk)?.im())?;
        Ok(Self { s, l: new_l, h })
    }

    /// Feeds coherent amplitudes into every input: `self ◁ (W(a1) ⊞ ... ⊞ W(an))`.
    pub fn feed_inputs(&self, amplitudes: &[Complex<T>]) -> Result<Self> {
        if amplitudes.len() != self.cdim() {
            return Err(Error::ChannelMismatch { left: self.cdim(), right: amplitudes.len() });
        }
        let sources = Self::new(
            Self::identity(amplitudes.len()).s,
            amplitudes.iter().map(|&a| Operator::scalar(a)).collect(),
            Operator::zero(),
        )?;
        self.series(&sources)
    }

    /// Splits a block-diagonal triplet into `K1 ⊞ K2` at channel `split`.
    ///
    /// The Hamiltonian goes to the first block when `hamiltonian_first`,
    /// otherwise to the second.
    pub fn decompose(&self, split: usize, hamiltonian_first: bool) -> Result<(Self, Self)> {
        let n = self.cdim();
        if split == 0 || split >= n {
            return Err(Error::ChannelIndex { index: split, cdim: n });
        }
        for r in 0..n {
            for c in 0..n {
                if (r < split) != (c < split) && !self.s[r][c].is_zero() {
                    return Err(Error::NotDecomposable(split));
                }
            }
        }
        let block = |lo: usize, hi: usize, h: Operator<T>| Self {
            s: (lo..hi).map(|r| self.s[r][lo..hi].to_vec()).collect(),
            l: self.l[lo..hi].to_vec(),
            h,
        };
        let (h1, h2) = if hamiltonian_first {
            (self.h.clone(), Operator::zero())
        } else {
            (Operator::zero(), self.h.clone())
        };
        Ok((block(0, split, h1), block(split, n, h2)))
    }
}

/// Validates a 1-based image tuple.
pub fn check_permutation(image: &[usize]) -> Result<()> {
    let n = image.len();
    let mut seen = vec![false; n];
    for &x in image {
        if x == 0 || x > n || seen[x - 1] {
            return Err(Error::NotBijective(image.to_vec()));
        }
        seen[x - 1] = true;
    }
    Ok(())
}

fn inverse_one_minus<T: Real>(s_kl: &Operator<T>) -> Option<Operator<T>> {
    let tol = T::lit(FEEDBACK_PIVOT_TOL);
    if let Some(z) = s_kl.as_scalar() {
        let d = one::<T>() - z;
        return (d.norm() > tol).then(|| Operator::scalar(one::<T>() / d));
    }
    let m = Operator::identity(s_kl.space()).sub(s_kl).ok()?;
    let inv = m.matrix().to_dense().inverse(tol)?;
    Operator::new(s_kl.space().clone(), SparseMatrix::from_dense(&inv)).ok()
}
