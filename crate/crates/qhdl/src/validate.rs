//! Connectivity checks producing a netlist graph.
//!
//! Signals and `<=` assignments are plain wires. Every wire chain must join
//! exactly one driver (entity input or instance output) to exactly one sink
//! (entity output or instance input).

use std::collections::{BTreeMap, HashMap, HashSet};

use qhdl_core::ParamExpr;
use serde::Serialize;

use crate::ast::*;
use crate::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Endpoint {
    /// Index into the entity input list.
    EntityIn(usize),
    EntityOut(usize),
    /// Instance index and port index within that direction.
    InstanceIn(usize, usize),
    InstanceOut(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetInstance {
    pub name: String,
    pub component: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Generic map with component defaults filled in.
    pub generics: Vec<(String, ParamExpr)>,
    pub span: Span,
}

/// A resolved driver-to-sink connection.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Net {
    pub driver: Endpoint,
    pub sink: Endpoint,
    /// Signals the connection passes through, in order.
    pub signals: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetlistGraph {
    pub entity: String,
    pub architecture: String,
    pub generics: Vec<Generic>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub instances: Vec<NetInstance>,
    pub nets: Vec<Net>,
}

impl NetlistGraph {
    pub fn net_from(&self, driver: &Endpoint) -> Option<&Net> {
        self.nets.iter().find(|n| &n.driver == driver)
    }

    pub fn net_to(&self, sink: &Endpoint) -> Option<&Net> {
        self.nets.iter().find(|n| &n.sink == sink)
    }

    /// Driver and sink of a named signal.
    pub fn signal(&self, name: &str) -> Option<&Net> {
        self.nets.iter().find(|n| n.signals.iter().any(|s| s == name))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Endpoint(usize),
    Signal(usize),
}

pub fn validate(design: &Design, entity: &str, architecture: Option<&str>) -> Result<NetlistGraph, Vec<Diagnostic>> {
    let Some(ent) = design.entity(entity) else {
        return Err(vec![Diagnostic::new(Span::new(1, 1), format!("unknown entity '{entity}'"))]);
    };
    let Some(arch) = design.architecture(entity, architecture) else {
        let what = match architecture {
            Some(a) => format!("unknown architecture '{a}' of entity '{entity}'"),
            None => format!("entity '{entity}' has no architecture"),
        };
        return Err(vec![Diagnostic::new(ent.span, what)]);
    };
    let mut v = Validator { diags: Vec::new() };
    let graph = v.run(ent, arch);
    if v.diags.is_empty() {
        Ok(graph)
    } else {
        v.diags.sort_by_key(|d| (d.span.line, d.span.col));
        Err(v.diags)
    }
}

struct Validator {
    diags: Vec<Diagnostic>,
}

impl Validator {
    fn err(&mut self, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::new(span, msg));
    }

    fn run(&mut self, ent: &Interface, arch: &Architecture) -> NetlistGraph {
        let inputs: Vec<String> = ent.inputs().map(|p| p.name.clone()).collect();
        let outputs: Vec<String> = ent.outputs().map(|p| p.name.clone()).collect();
        if inputs.len() != outputs.len() || inputs.is_empty() {
            self.err(ent.span, format!("entity '{}' needs equally many input and output ports, at least one each", ent.name));
        }
        self.check_components(arch);

        let mut names: HashMap<&str, Span> = HashMap::new();
        for p in &ent.ports {
            names.insert(&p.name, p.span);
        }
        for g in &ent.generics {
            names.insert(&g.name, g.span);
        }
        let mut signal_index = HashMap::new();
        let mut signal_names = Vec::new();
        for s in &arch.signals {
            if names.contains_key(s.name.as_str()) {
                self.err(s.span, format!("signal '{}' clashes with another declaration", s.name));
            } else {
                names.insert(&s.name, s.span);
                signal_index.insert(s.name.as_str(), signal_names.len());
                signal_names.push(s.name.as_str());
            }
        }

        // endpoints: entity inputs, entity outputs, then instance ports
        let mut endpoints: Vec<Endpoint> = (0..inputs.len()).map(Endpoint::EntityIn).collect();
        endpoints.extend((0..outputs.len()).map(Endpoint::EntityOut));
        let ep_index = |e: &Endpoint, endpoints: &[Endpoint]| endpoints.iter().position(|x| x == e).unwrap();

        // wire[node] = (downstream, upstream) neighbours with their spans
        let mut down: HashMap<Node, Vec<(Node, Span)>> = HashMap::new();
        let mut up: HashMap<Node, Vec<(Node, Span)>> = HashMap::new();
        let mut link = |from: Node, to: Node, span: Span| {
            down.entry(from).or_default().push((to, span));
            up.entry(to).or_default().push((from, span));
        };

        let mut instances = Vec::new();
        let mut seen_inst = HashSet::new();
        for inst in &arch.instances {
            if !seen_inst.insert(&inst.name) {
                self.err(inst.span, format!("duplicate instance name '{}'", inst.name));
                continue;
            }
            if names.contains_key(inst.name.as_str()) {
                self.err(inst.span, format!("instance name '{}' clashes with another declaration", inst.name));
            }
            let Some(comp) = arch.component(&inst.component) else {
                self.err(inst.span, format!("unknown component '{}' in instance '{}'", inst.component, inst.name));
                continue;
            };
            let idx = instances.len();
            let generics = self.generic_map(ent, comp, inst);
            let in_ports: Vec<String> = comp.inputs().map(|p| p.name.clone()).collect();
            let out_ports: Vec<String> = comp.outputs().map(|p| p.name.clone()).collect();
            let mut mapped = HashSet::new();
            let before = self.diags.len();
            for a in &inst.port_map {
                let Some(port) = comp.port(&a.formal) else {
                    self.err(a.span, format!("component '{}' has no port '{}'", comp.name, a.formal));
                    continue;
                };
                if !mapped.insert(&a.formal) {
                    self.err(a.span, format!("port '{}' of instance '{}' mapped twice", a.formal, inst.name));
                    continue;
                }
                let endpoint = match port.dir {
                    Direction::In => Endpoint::InstanceIn(idx, in_ports.iter().position(|p| *p == a.formal).unwrap()),
                    Direction::Out => Endpoint::InstanceOut(idx, out_ports.iter().position(|p| *p == a.formal).unwrap()),
                };
                endpoints.push(endpoint.clone());
                let me = Node::Endpoint(endpoints.len() - 1);
                let other = if let Some(&s) = signal_index.get(a.actual.as_str()) {
                    Node::Signal(s)
                } else if let Some(k) = inputs.iter().position(|p| *p == a.actual) {
                    if port.dir == Direction::Out {
                        self.err(a.span, format!("output port '{}:{}' wired to entity input '{}'", inst.name, a.formal, a.actual));
                        continue;
                    }
                    Node::Endpoint(ep_index(&Endpoint::EntityIn(k), &endpoints))
                } else if let Some(k) = outputs.iter().position(|p| *p == a.actual) {
                    if port.dir == Direction::In {
                        self.err(a.span, format!("input port '{}:{}' wired to entity output '{}'", inst.name, a.formal, a.actual));
                        continue;
                    }
                    Node::Endpoint(ep_index(&Endpoint::EntityOut(k), &endpoints))
                } else {
                    self.err(a.span, format!("unknown signal or port '{}'", a.actual));
                    continue;
                };
                match port.dir {
                    Direction::In => link(other, me, a.span),
                    Direction::Out => link(me, other, a.span),
                }
            }
            // a misspelt formal already explains the missing one
            let clean = self.diags.len() == before;
            for p in comp.ports.iter().filter(|_| clean) {
                if !mapped.contains(&p.name) {
                    self.err(inst.span, format!("unmapped port '{}' of instance '{}'", p.name, inst.name));
                }
            }
            instances.push(NetInstance {
                name: inst.name.clone(),
                component: inst.component.clone(),
                inputs: in_ports,
                outputs: out_ports,
                generics,
                span: inst.span,
            });
        }

        for asg in &arch.assignments {
            let target = if let Some(&s) = signal_index.get(asg.target.as_str()) {
                Node::Signal(s)
            } else if let Some(k) = outputs.iter().position(|p| *p == asg.target) {
                Node::Endpoint(ep_index(&Endpoint::EntityOut(k), &endpoints))
            } else {
                let msg = if inputs.contains(&asg.target) {
                    format!("cannot assign to entity input '{}'", asg.target)
                } else {
                    format!("unknown signal or port '{}'", asg.target)
                };
                self.err(asg.span, msg);
                continue;
            };
            let source = if let Some(&s) = signal_index.get(asg.source.as_str()) {
                Node::Signal(s)
            } else if let Some(k) = inputs.iter().position(|p| *p == asg.source) {
                Node::Endpoint(ep_index(&Endpoint::EntityIn(k), &endpoints))
            } else {
                let msg = if outputs.contains(&asg.source) {
                    format!("cannot read entity output '{}'", asg.source)
                } else {
                    format!("unknown signal or port '{}'", asg.source)
                };
                self.err(asg.span, msg);
                continue;
            };
            link(source, target, asg.span);
        }

        // later checks only run on a clean earlier tier, so one fault gives one diagnostic
        if !self.diags.is_empty() {
            return self.empty_graph(ent, arch, inputs, outputs, instances);
        }
        for s in &arch.signals {
            let Some(&si) = signal_index.get(s.name.as_str()) else { continue };
            let n_up = up.get(&Node::Signal(si)).map_or(0, Vec::len);
            let n_down = down.get(&Node::Signal(si)).map_or(0, Vec::len);
            match (n_up, n_down) {
                (0, 0) => self.err(s.span, format!("signal '{}' is not connected", s.name)),
                (0, _) => self.err(s.span, format!("signal '{}' has no driver", s.name)),
                (_, 0) => self.err(s.span, format!("signal '{}' has no sink", s.name)),
                _ => {}
            }
            if n_up > 1 {
                self.err(up[&Node::Signal(si)][1].1, format!("signal '{}' has two drivers", s.name));
            }
            if n_down > 1 {
                self.err(down[&Node::Signal(si)][1].1, format!("signal '{}' has two sinks", s.name));
            }
        }
        if !self.diags.is_empty() {
            return self.empty_graph(ent, arch, inputs, outputs, instances);
        }
        for (k, name) in inputs.iter().enumerate() {
            let node = Node::Endpoint(k);
            match down.get(&node).map_or(0, Vec::len) {
                0 => self.err(ent.port(name).unwrap().span, format!("entity input '{name}' is not connected")),
                1 => {}
                _ => self.err(down[&node][1].1, format!("entity input '{name}' connected twice")),
            }
        }
        for (k, name) in outputs.iter().enumerate() {
            let node = Node::Endpoint(inputs.len() + k);
            match up.get(&node).map_or(0, Vec::len) {
                0 => self.err(ent.port(name).unwrap().span, format!("entity output '{name}' is not connected")),
                1 => {}
                _ => self.err(up[&node][1].1, format!("entity output '{name}' connected twice")),
            }
        }
        if !self.diags.is_empty() {
            return self.empty_graph(ent, arch, inputs, outputs, instances);
        }

        // follow each driver through its wire chain
        let mut nets = Vec::new();
        let mut visited = HashSet::new();
        for (i, e) in endpoints.iter().enumerate() {
            if !matches!(e, Endpoint::EntityIn(_) | Endpoint::InstanceOut(..)) {
                continue;
            }
            let mut node = Node::Endpoint(i);
            let mut signals = Vec::new();
            loop {
                let next = down[&node][0].0;
                match next {
                    Node::Signal(s) => {
                        visited.insert(s);
                        signals.push(signal_names[s].to_string());
                        node = next;
                    }
                    Node::Endpoint(j) => {
                        nets.push(Net { driver: e.clone(), sink: endpoints[j].clone(), signals });
                        break;
                    }
                }
            }
        }
        for s in &arch.signals {
            if signal_index.get(s.name.as_str()).is_some_and(|i| !visited.contains(i)) {
                self.err(s.span, format!("signal '{}' lies on a loop of assignments without a driver", s.name));
            }
        }
        if !self.diags.is_empty() {
            return self.empty_graph(ent, arch, inputs, outputs, instances);
        }
        NetlistGraph {
            entity: ent.name.clone(),
            architecture: arch.name.clone(),
            generics: ent.generics.clone(),
            inputs,
            outputs,
            instances,
            nets,
        }
    }

    fn empty_graph(
        &self,
        ent: &Interface,
        arch: &Architecture,
        inputs: Vec<String>,
        outputs: Vec<String>,
        instances: Vec<NetInstance>,
    ) -> NetlistGraph {
        NetlistGraph {
            entity: ent.name.clone(),
            architecture: arch.name.clone(),
            generics: ent.generics.clone(),
            inputs,
            outputs,
            instances,
            nets: Vec::new(),
        }
    }

    fn check_components(&mut self, arch: &Architecture) {
        let mut seen = HashSet::new();
        for c in &arch.components {
            if !seen.insert(&c.name) {
                self.err(c.span, format!("component '{}' declared twice", c.name));
            }
            let (n_in, n_out) = (c.inputs().count(), c.outputs().count());
            if n_in != n_out || n_in == 0 {
                self.err(c.span, format!("component '{}' needs equally many input and output ports, at least one each", c.name));
            }
            for g in &c.generics {
                if let Some(d) = &g.default {
                    if let Some(v) = d.variables().first() {
                        self.err(g.span, format!("default of generic '{}' may not reference '{v}'", g.name));
                    }
                }
            }
        }
    }

    fn generic_map(&mut self, ent: &Interface, comp: &Interface, inst: &Instance) -> Vec<(String, ParamExpr)> {
        let mut given: BTreeMap<&str, &Assoc<ParamExpr>> = BTreeMap::new();
        for a in &inst.generic_map {
            if given.insert(&a.formal, a).is_some() {
                self.err(a.span, format!("generic '{}' of instance '{}' mapped twice", a.formal, inst.name));
            }
        }
        let mut out = Vec::new();
        for a in &inst.generic_map {
            let Some(g) = comp.generic(&a.formal) else {
                self.err(a.span, format!("component '{}' has no generic '{}'", comp.name, a.formal));
                continue;
            };
            let mut ok = true;
            for v in a.actual.variables() {
                if ent.generic(v).is_none() {
                    self.err(a.span, format!("unknown generic '{v}' in generic map of '{}'", inst.name));
                    ok = false;
                }
            }
            if ok && g.kind != GenericKind::Complex && expr_kind(&a.actual, ent) == GenericKind::Complex {
                self.err(a.span, format!("complex value assigned to real generic '{}'", g.name));
            }
        }
        for g in &comp.generics {
            match (given.get(g.name.as_str()), &g.default) {
                (Some(a), _) => out.push((g.name.clone(), a.actual.clone())),
                (None, Some(d)) => out.push((g.name.clone(), d.clone())),
                (None, None) => self.err(inst.span, format!("generic '{}' of instance '{}' has no value", g.name, inst.name)),
            }
        }
        out
    }
}

/// Static kind of a generic-map expression: complex if any leaf is complex.
fn expr_kind(e: &ParamExpr, ent: &Interface) -> GenericKind {
    let complex = match e {
        ParamExpr::Complex(..) => true,
        ParamExpr::Real(_) => false,
        ParamExpr::Var(v) => ent.generic(v).is_some_and(|g| g.kind == GenericKind::Complex),
        ParamExpr::Neg(inner) => return expr_kind(inner, ent),
        ParamExpr::Bin(_, a, b) => expr_kind(a, ent) == GenericKind::Complex || expr_kind(b, ent) == GenericKind::Complex,
    };
    if complex {
        GenericKind::Complex
    } else {
        GenericKind::Real
    }
}
