//! Compiled-model JSON files: the hand-off between compilation and simulation.
//!
//! ```json
//! {"n": 2, "space": [{"label": "a", "dim": 4}],
//!  "S": [[op, op], [op, op]], "L": [op, op], "H": op}
//! ```
//! where every `op` is `{"shape": [d, d], "entries": [[row, col, re, im], ...]}`
//! over the full joint space, 0-based and sorted row-major.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::slh::SlhTriplet;
use crate::space::{HilbertSpace, Mode};
use crate::sparse::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseOp {
    pub shape: [usize; 2],
    pub entries: Vec<(usize, usize, f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub n: usize,
    pub space: Vec<Mode>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<SparseOp>>,
    #[serde(rename = "L")]
    pub l: Vec<SparseOp>,
    #[serde(rename = "H")]
    pub h: SparseOp,
    /// Entity input port names, in channel order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

fn write_op<T: Real>(op: &Operator<T>) -> SparseOp {
    let d = op.dim();
    SparseOp {
        shape: [d, d],
        entries: op.matrix().triplets().map(|(r, c, v)| (r, c, v.re.to_f64_lossy(), v.im.to_f64_lossy())).collect(),
    }
}

fn read_op<T: Real>(op: &SparseOp, space: &HilbertSpace) -> Result<Operator<T>> {
    let d = space.dim();
    if op.shape != [d, d] {
        return Err(Error::Model(format!("operator shape {:?} does not match space dimension {d}", op.shape)));
    }
    if let Some(&(r, c, ..)) = op.entries.iter().find(|e| e.0 >= d || e.1 >= d) {
        return Err(Error::Model(format!("entry ({r}, {c}) out of bounds for dimension {d}")));
    }
    let m = SparseMatrix::from_triplets(d, d, op.entries.iter().map(|&(r, c, re, im)| (r, c, Complex::new(T::lit(re), T::lit(im)))));
    Operator::new(space.clone(), m)
}

impl ModelFile {
    pub fn from_triplet<T: Real>(q: &SlhTriplet<T>) -> Result<Self> {
        let q = q.embedded()?;
        let space = q.space()?;
        Ok(Self {
            n: q.cdim(),
            space: space.modes().to_vec(),
            s: q.s().iter().map(|row| row.iter().map(write_op).collect()).collect(),
            l: q.l().iter().map(write_op).collect(),
            h: write_op(q.h()),
            inputs: None,
            outputs: None,
            metadata: None,
        })
    }

    pub fn with_ports(mut self, inputs: Vec<String>, outputs: Vec<String>) -> Self {
        self.inputs = Some(inputs);
        self.outputs = Some(outputs);
        self
    }

    pub fn hilbert_space(&self) -> Result<HilbertSpace> {
        HilbertSpace::new(self.space.iter().map(|m| (m.label.clone(), m.dim)))
    }

    pub fn to_triplet<T: Real>(&self) -> Result<SlhTriplet<T>> {
        let space = self.hilbert_space()?;
        if self.s.len() != self.n || self.l.len() != self.n {
            return Err(Error::Model(format!("declared n = {} but S/L have {}/{} rows", self.n, self.s.len(), self.l.len())));
        }
        SlhTriplet::new(
            self.s
                .iter()
                .map(|row| row.iter().map(|op| read_op(op, &space)).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            self.l.iter().map(|op| read_op(op, &space)).collect::<Result<_>>()?,
            read_op(&self.h, &space)?,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Model(e.to_string()))
    }
}
