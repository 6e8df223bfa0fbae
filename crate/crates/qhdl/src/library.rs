//! Built-in primitive components.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qhdl_core::components::{beamsplitter, cavity, displace, kerr_cavity, phase, KerrCavity};
use qhdl_core::Slh;

use crate::ast::GenericKind;

pub struct Primitive {
    pub name: &'static str,
    pub params: &'static [(&'static str, GenericKind)],
    pub cdim: usize,
    /// Whether the model owns a cavity mode (needs a Fock dimension).
    pub dynamic: bool,
    build: fn(&BTreeMap<String, Complex64>, &str, usize) -> qhdl_core::Result<Slh>,
}

impl Primitive {
    /// `values` holds every parameter; `label` and `fock` name and size the mode.
    pub fn build(&self, values: &BTreeMap<String, Complex64>, label: &str, fock: usize) -> qhdl_core::Result<Slh> {
        (self.build)(values, label, fock)
    }
}

fn re(v: &BTreeMap<String, Complex64>, name: &str) -> f64 {
    v[name].re
}

pub const PRIMITIVES: &[Primitive] = &[
    Primitive {
        name: "beamsplitter",
        params: &[("theta", GenericKind::Real)],
        cdim: 2,
        dynamic: false,
        build: |v, _, _| Ok(beamsplitter(re(v, "theta"))),
    },
    Primitive {
        name: "phase",
        params: &[("phi", GenericKind::Real)],
        cdim: 1,
        dynamic: false,
        build: |v, _, _| Ok(phase(re(v, "phi"))),
    },
    Primitive {
        name: "displace",
        params: &[("alpha", GenericKind::Complex)],
        cdim: 1,
        dynamic: false,
        build: |v, _, _| Ok(displace(v["alpha"])),
    },
    Primitive {
        name: "kerr_cavity",
        params: &[
            ("delta", GenericKind::Real),
            ("chi", GenericKind::Real),
            ("kappa_1", GenericKind::Real),
            ("kappa_2", GenericKind::Real),
        ],
        cdim: 2,
        dynamic: true,
        build: |v, label, n| {
            let p = KerrCavity {
                detuning: re(v, "delta"),
                chi: re(v, "chi"),
                kappa_1: re(v, "kappa_1"),
                kappa_2: re(v, "kappa_2"),
            };
            kerr_cavity(&p, label, n)
        },
    },
    Primitive {
        name: "cavity",
        params: &[("delta", GenericKind::Real), ("kappa", GenericKind::Real)],
        cdim: 1,
        dynamic: true,
        build: |v, label, n| cavity(re(v, "delta"), re(v, "kappa"), label, n),
    },
];

pub fn primitive(name: &str) -> Option<&'static Primitive> {
    PRIMITIVES.iter().find(|p| p.name == name)
}
