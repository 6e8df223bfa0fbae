//! Netlist to circuit expression.
//!
//! Channel positions are recomputed from ordered label lists after every
//! feedback, so no index arithmetic is carried between steps.

use std::fmt;

use qhdl_core::{CircuitExpression as E, ParamBinding};

use crate::validate::{Endpoint, NetlistGraph};

#[derive(Debug, thiserror::Error)]
#[error("internal synthesis defect: {0}")]
pub struct SynthDefect(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Label {
    In(usize, usize),
    Out(usize, usize),
    /// Padded identity channel of the given padded net.
    Wire(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::In(i, p) => write!(f, "in {i}:{p}"),
            Label::Out(i, p) => write!(f, "out {i}:{p}"),
            Label::Wire(j) => write!(f, "wire {j}"),
        }
    }
}

fn position(list: &[Label], label: &Label) -> Result<usize, SynthDefect> {
    list.iter().position(|l| l == label).ok_or_else(|| SynthDefect(format!("label {label} missing")))
}

fn defect(e: qhdl_core::Error) -> SynthDefect {
    SynthDefect(e.to_string())
}

pub fn synthesize(g: &NetlistGraph) -> Result<E, SynthDefect> {
    let mut leaves = Vec::new();
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for (i, inst) in g.instances.iter().enumerate() {
        let params = inst.generics.iter().map(|(name, value)| ParamBinding { name: name.clone(), value: value.clone() }).collect();
        leaves.push(E::component(&inst.component, &inst.name, inst.inputs.len(), params));
        ins.extend((0..inst.inputs.len()).map(|p| Label::In(i, p)));
        outs.extend((0..inst.outputs.len()).map(|p| Label::Out(i, p)));
    }

    // internal nets first, then entity-to-entity passthroughs
    let internal = |d: &Endpoint, s: &Endpoint| matches!((d, s), (Endpoint::InstanceOut(..), Endpoint::InstanceIn(..)));
    let mut padded: Vec<usize> = (0..g.nets.len()).filter(|&j| internal(&g.nets[j].driver, &g.nets[j].sink)).collect();
    padded.extend((0..g.nets.len()).filter(|&j| matches!(g.nets[j].driver, Endpoint::EntityIn(_)) && matches!(g.nets[j].sink, Endpoint::EntityOut(_))));
    if !padded.is_empty() {
        leaves.push(E::identity(padded.len()));
        ins.extend((0..padded.len()).map(Label::Wire));
        outs.extend((0..padded.len()).map(Label::Wire));
    }
    let mut q = E::concat(leaves).map_err(defect)?;
    let wire_of = |net: usize| padded.iter().position(|&j| j == net).map(Label::Wire);

    for label in outs.clone() {
        let Label::Out(i, p) = label else { continue };
        let net = g.net_from(&Endpoint::InstanceOut(i, p)).ok_or_else(|| SynthDefect(format!("no net from {label}")))?;
        if !matches!(net.sink, Endpoint::InstanceIn(..)) {
            continue;
        }
        let wire = wire_of(net_index(g, net)).ok_or_else(|| SynthDefect("internal net not padded".into()))?;
        let k = position(&outs, &label)?;
        let l = position(&ins, &wire)?;
        q = E::feedback(q, k + 1, l + 1).map_err(defect)?;
        outs.remove(k);
        ins.remove(l);
    }
    for label in ins.clone() {
        let Label::In(i, p) = label else { continue };
        let net = g.net_to(&Endpoint::InstanceIn(i, p)).ok_or_else(|| SynthDefect(format!("no net into {label}")))?;
        if !matches!(net.driver, Endpoint::InstanceOut(..)) {
            continue;
        }
        let wire = wire_of(net_index(g, net)).ok_or_else(|| SynthDefect("internal net not padded".into()))?;
        let k = position(&outs, &wire)?;
        let l = position(&ins, &label)?;
        q = E::feedback(q, k + 1, l + 1).map_err(defect)?;
        outs.remove(k);
        ins.remove(l);
    }

    let n = g.inputs.len();
    if outs.len() != n || ins.len() != n || g.outputs.len() != n {
        return Err(SynthDefect(format!("{} outputs and {} inputs left for {n} entity ports", outs.len(), ins.len())));
    }
    let mut sigma_out = vec![0; n];
    for (m, label) in outs.iter().enumerate() {
        let net = match label {
            Label::Out(i, p) => g.net_from(&Endpoint::InstanceOut(*i, *p)),
            Label::Wire(w) => g.nets.get(padded[*w]),
            Label::In(..) => None,
        };
        let Some(Endpoint::EntityOut(e)) = net.map(|n| &n.sink) else {
            return Err(SynthDefect(format!("{label} does not reach an entity output")));
        };
        sigma_out[m] = e + 1;
    }
    let mut sigma_in = vec![0; n];
    for (m, label) in ins.iter().enumerate() {
        let net = match label {
            Label::In(i, p) => g.net_to(&Endpoint::InstanceIn(*i, *p)),
            Label::Wire(w) => g.nets.get(padded[*w]),
            Label::Out(..) => None,
        };
        let Some(Endpoint::EntityIn(e)) = net.map(|n| &n.driver) else {
            return Err(SynthDefect(format!("{label} is not fed by an entity input")));
        };
        sigma_in[*e] = m + 1;
    }
    let identity = |s: &[usize]| s.iter().enumerate().all(|(i, &x)| x == i + 1);
    if !identity(&sigma_in) {
        q = E::series(E::permutation(sigma_in).map_err(defect)?, q).map_err(defect)?;
    }
    if !identity(&sigma_out) {
        q = E::series(q, E::permutation(sigma_out).map_err(defect)?).map_err(defect)?;
    }
    Ok(q)
}

fn net_index(g: &NetlistGraph, net: &crate::validate::Net) -> usize {
    g.nets.iter().position(|n| std::ptr::eq(n, net)).expect("net belongs to graph")
}
