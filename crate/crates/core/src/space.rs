//! Ordered multi-mode Hilbert-space descriptors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mode {
    pub label: String,
    pub dim: usize,
}

/// Tensor product of labelled truncated modes, ordered ascending by label.
///
/// Basis indices are row-major over the modes: the first label is the most
/// significant digit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    modes: Vec<Mode>,
}

impl HilbertSpace {
    /// The one-dimensional space carrying scalar operators.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn new(modes: impl IntoIterator<Item = (String, usize)>) -> Result<Self> {
        let mut modes: Vec<Mode> = modes.into_iter().map(|(label, dim)| Mode { label, dim }).collect();
        if let Some(m) = modes.iter().find(|m| m.dim == 0) {
            return Err(Error::InvalidDimension { label: m.label.clone(), dim: 0 });
        }
        modes.sort_by(|a, b| a.label.cmp(&b.label));
        if let Some(w) = modes.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::DuplicateMode(w[0].label.clone()));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn is_trivial(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.modes.iter().map(|m| m.dim).product()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.modes.binary_search_by(|m| m.label.as_str().cmp(label)).ok()
    }

    pub fn mode_dim(&self, label: &str) -> Option<usize> {
        self.position(label).map(|p| self.modes[p].dim)
    }

    /// Strides of each mode's digit in a flat basis index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.modes.len()];
        for k in (0..self.modes.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.modes[k + 1].dim;
        }
        strides
    }

    /// Merged descriptor; fails when a shared label disagrees on dimension.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.modes.len() + other.modes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.modes.len() || j < other.modes.len() {
            match (self.modes.get(i), other.modes.get(j)) {
                (Some(a), Some(b)) if a.label == b.label => {
                    if a.dim != b.dim {
                        return Err(Error::ModeConflict {
                            label: a.label.clone(),
                            first: a.dim,
                            second: b.dim,
                        });
                    }
                    out.push(a.clone());
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.label < b.label => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Self { modes: out })
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.modes.iter().all(|m| self.mode_dim(&m.label) == Some(m.dim))
    }
}

impl std::fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.modes.is_empty() {
            return write!(f, "C");
        }
        let parts: Vec<String> = self.modes.iter().map(|m| format!("{}[{}]", m.label, m.dim)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
