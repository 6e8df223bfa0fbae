use qhdl_core::{DenseMatrix, HilbertSpace, C64};

use crate::error::{DynamicsError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    DensityMatrix(HilbertSpace, DenseMatrix),
    StateVector(HilbertSpace, Vec<C64>),
}

/// Basis index of a product Fock state; unnamed modes are in vacuum.
pub fn fock_index(space: &HilbertSpace, occupations: &[(&str, usize)]) -> Result<usize> {
    let strides = space.strides();
    let mut index = 0;
    for &(label, n) in occupations {
        let pos = space
            .position(label)
            .ok_or_else(|| DynamicsError::Config(format!("no mode '{label}' in space {space}")))?;
        let dim = space.modes()[pos].dim;
        if n >= dim {
            return Err(DynamicsError::Config(format!("occupation {n} exceeds truncation {dim} of mode '{label}'")));
        }
        index += n * strides[pos];
    }
    Ok(index)
}

impl QuantumState {
    pub fn fock_vector(space: &HilbertSpace, occupations: &[(&str, usize)]) -> Result<Self> {
        let mut psi = vec![C64::new(0.0, 0.0); space.dim()];
        psi[fock_index(space, occupations)?] = C64::new(1.0, 0.0);
        Ok(Self::StateVector(space.clone(), psi))
    }

    pub fn fock_density(space: &HilbertSpace, occupations: &[(&str, usize)]) -> Result<Self> {
        let i = fock_index(space, occupations)?;
        let mut rho = DenseMatrix::zeros(space.dim());
        rho[(i, i)] = C64::new(1.0, 0.0);
        Ok(Self::DensityMatrix(space.clone(), rho))
    }

    pub fn space(&self) -> &HilbertSpace {
        match self {
            Self::DensityMatrix(s, _) | Self::StateVector(s, _) => s,
        }
    }

    /// `|ψ⟩⟨ψ|` for a state vector; a density matrix is returned unchanged.
    pub fn to_density(&self) -> Self {
        match self {
            Self::StateVector(s, psi) => Self::DensityMatrix(s.clone(), DenseMatrix::outer(psi)),
            other => other.clone(),
        }
    }

    /// Checks the invariants: unit trace or norm, Hermiticity, no
    /// significantly negative populations on the diagonal.
    pub fn check(&self) -> Result<()> {
        match self {
            Self::StateVector(_, psi) => {
                let n = norm_sqr(psi).sqrt();
                if (n - 1.0).abs() > 1e-9 {
                    return Err(DynamicsError::Config(format!("state vector norm {n} is not 1")));
                }
            }
            Self::DensityMatrix(_, rho) => {
                let tr = rho.trace();
                if (tr.re - 1.0).abs() > 1e-6 || tr.im.abs() > 1e-6 {
                    return Err(DynamicsError::Config(format!("density matrix trace {tr} is not 1")));
                }
                if rho.hermiticity_residual() > 1e-8 {
                    return Err(DynamicsError::Config("density matrix is not Hermitian".into()));
                }
                if (0..rho.dim()).any(|i| rho[(i, i)].re < -1e-8) {
                    return Err(DynamicsError::Config("density matrix has negative populations".into()));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn norm_sqr(psi: &[C64]) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum()
}

/// `⟨ψ|A|ψ⟩ / ⟨ψ|ψ⟩`.
pub(crate) fn expect_vector(a: &qhdl_core::SparseMatrix, psi: &[C64], norm_sqr: f64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for (r, x) in psi.iter().enumerate() {
        let mut row = C64::new(0.0, 0.0);
        for &(c, v) in a.row(r) {
            row += v * psi[c];
        }
        s += x.conj() * row;
    }
    s / norm_sqr
}
