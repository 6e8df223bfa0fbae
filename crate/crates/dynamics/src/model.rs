//! Numerical form of an (S, L, H) model: only L and H enter the dynamics.

use qhdl_core::{HilbertSpace, Operator, Slh, SparseMatrix, C64};

use crate::error::Result;

/// A named operator whose expectation value is recorded.
#[derive(Clone, Debug)]
pub struct Observable {
    pub name: String,
    pub operator: Operator,
}

impl Observable {
    pub fn new(name: impl Into<String>, operator: Operator) -> Self {
        Self { name: name.into(), operator }
    }

    /// Photon number `a†a` of one mode, named `n(label)`.
    pub fn number(space: &HilbertSpace, label: &str) -> Result<Self> {
        let dim = mode_dim(space, label)?;
        Ok(Self::new(format!("n({label})"), Operator::number(label, dim)?))
    }

    /// Annihilation operator of one mode, named `a(label)`.
    pub fn destroy(space: &HilbertSpace, label: &str) -> Result<Self> {
        let dim = mode_dim(space, label)?;
        Ok(Self::new(format!("a({label})"), Operator::destroy(label, dim)?))
    }

    /// Photon numbers of every mode in the space.
    pub fn numbers(space: &HilbertSpace) -> Result<Vec<Self>> {
        space.modes().iter().map(|m| Self::number(space, &m.label)).collect()
    }
}

fn mode_dim(space: &HilbertSpace, label: &str) -> Result<usize> {
    space
        .mode_dim(label)
        .ok_or_else(|| crate::DynamicsError::Config(format!("no mode '{label}' in space {space}")))
}

/// Coupling and Hamiltonian matrices over the joint space of a model.
#[derive(Clone, Debug)]
pub struct Model {
    space: HilbertSpace,
    l: Vec<SparseMatrix>,
    h: SparseMatrix,
    /// `H - i/2 Σ L†L`.
    heff: SparseMatrix,
}

impl Model {
    pub fn from_slh(q: &Slh) -> Result<Self> {
        let q = q.embedded()?;
        let space = q.space()?;
        Self::from_parts(space, q.l().iter().map(|op| op.matrix().clone()).collect(), q.h().matrix().clone())
    }

    /// Like [`Model::from_slh`] but over a given (larger) space.
    pub fn from_slh_in(q: &Slh, space: &HilbertSpace) -> Result<Self> {
        let q = q.embedded_in(space)?;
        Self::from_parts(space.clone(), q.l().iter().map(|op| op.matrix().clone()).collect(), q.h().matrix().clone())
    }

    fn from_parts(space: HilbertSpace, l: Vec<SparseMatrix>, h: SparseMatrix) -> Result<Self> {
        let mut decay = SparseMatrix::zeros(space.dim(), space.dim());
        for m in &l {
            decay = decay.add(&m.adjoint().mul(m));
        }
        let heff = h.sub(&decay.scale(C64::new(0.0, 0.5)));
        Ok(Self { space, l, h, heff })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn channels(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[SparseMatrix] {
        &self.l
    }

    pub fn h(&self) -> &SparseMatrix {
        &self.h
    }

    pub fn heff(&self) -> &SparseMatrix {
        &self.heff
    }

    /// Embeds the observables into the model space.
    pub fn observable_matrices(&self, observables: &[Observable]) -> Result<Vec<SparseMatrix>> {
        observables.iter().map(|o| Ok(o.operator.embed(&self.space)?.into_matrix())).collect()
    }
}
