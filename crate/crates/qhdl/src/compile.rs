//! Hierarchical compilation of an entity to a concrete (S, L, H) model.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qhdl_core::{evaluate_with, CircuitExpression, ComponentRef, ParamEnv, Slh};

use crate::ast::{Design, Generic, GenericKind, Interface};
use crate::diag::{Diagnostic, Report};
use crate::library::primitive;
use crate::parser::parse;
use crate::synth::{synthesize, SynthDefect};
use crate::validate::{validate, NetlistGraph};

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Source {
    pub path: String,
    pub design: Design,
}

impl Source {
    pub fn parse(path: impl Into<String>, text: &str) -> Result<Self, Report> {
        let path = path.into();
        match parse(text) {
            Ok(design) => Ok(Self { path, design }),
            Err(d) => Err(Report::single(&path, d)),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CompileError {
    #[error("{0}")]
    Diagnostics(Report),
    #[error("unknown entity '{0}'")]
    UnknownEntity(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("parameter {name} = {value} is not a valid {kind}")]
    ParameterKind { name: String, value: Complex64, kind: &'static str },
    #[error("missing Fock dimension for mode '{0}'")]
    MissingFock(String),
    #[error("component '{0}' is neither an entity in the input files nor a primitive")]
    UnknownComponent(String),
    #[error("component declaration '{name}' does not match {what}")]
    InterfaceMismatch { name: String, what: String },
    #[error("entity '{0}' instantiates itself")]
    Recursive(String),
    #[error("instance '{instance}': {source}")]
    Evaluation { instance: String, source: qhdl_core::Error },
    #[error(transparent)]
    Algebra(#[from] qhdl_core::Error),
    #[error(transparent)]
    Synth(#[from] SynthDefect),
}

/// Fock dimensions by mode label, with an optional fallback.
#[derive(Clone, Debug, Default)]
pub struct FockDims {
    pub per_mode: BTreeMap<String, usize>,
    pub default: Option<usize>,
}

impl FockDims {
    pub fn uniform(n: usize) -> Self {
        Self { per_mode: BTreeMap::new(), default: Some(n) }
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.per_mode.get(label).copied().or(self.default)
    }
}

#[derive(Debug)]
pub struct Compiled {
    /// Synthesized expression of the top entity.
    pub expression: CircuitExpression,
    pub graph: NetlistGraph,
    pub model: Slh,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Resolved top-level parameter values.
    pub params: ParamEnv,
}

/// Files in lookup order; the first one holds the top entity.
pub struct Library<'a> {
    pub sources: &'a [Source],
}

/// Validates and synthesizes one entity of `source`.
pub fn synthesize_entity(source: &Source, entity: &str, architecture: Option<&str>) -> Result<(NetlistGraph, CircuitExpression), CompileError> {
    if source.design.entity(entity).is_none() {
        return Err(CompileError::UnknownEntity(entity.to_string()));
    }
    let graph = validate(&source.design, entity, architecture).map_err(|ds| CompileError::Diagnostics(Report::from_all(&source.path, ds)))?;
    let expr = synthesize(&graph)?;
    Ok((graph, expr))
}

impl Library<'_> {
    pub fn compile(
        &self,
        entity: &str,
        architecture: Option<&str>,
        params: &BTreeMap<String, Complex64>,
        fock: &FockDims,
    ) -> Result<Compiled, CompileError> {
        let src = self.sources.iter().position(|s| s.design.entity(entity).is_some()).ok_or_else(|| CompileError::UnknownEntity(entity.to_string()))?;
        let ent = self.sources[src].design.entity(entity).unwrap();
        for name in params.keys() {
            if ent.generic(name).is_none() {
                return Err(CompileError::UnknownParameter(name.clone()));
            }
        }
        let env = bind_generics(&ent.generics, params)?;
        let mut stack = vec![entity.to_string()];
        let (graph, expression, model) = self.compile_entity(src, entity, architecture, &env, "", fock, &mut stack)?;
        Ok(Compiled { expression, model, inputs: graph.inputs.clone(), outputs: graph.outputs.clone(), graph, params: env })
    }

    #[allow(clippy::too_many_arguments)]
    fn compile_entity(
        &self,
        src: usize,
        entity: &str,
        architecture: Option<&str>,
        env: &ParamEnv,
        prefix: &str,
        fock: &FockDims,
        stack: &mut Vec<String>,
    ) -> Result<(NetlistGraph, CircuitExpression, Slh), CompileError> {
        let source = &self.sources[src];
        let (graph, expr) = synthesize_entity(source, entity, architecture)?;
        let arch = source.design.architecture(entity, architecture).expect("validated");
        let model = evaluate_with(&expr, &mut |c: &ComponentRef| -> Result<Slh, CompileError> {
            let values = c
                .params
                .iter()
                .map(|b| Ok((b.name.clone(), b.value.eval(env)?)))
                .collect::<Result<BTreeMap<_, _>, qhdl_core::Error>>()
                .map_err(|source| CompileError::Evaluation { instance: format!("{prefix}{}", c.label), source })?;
            let decl = arch.component(&c.component).expect("validated");
            let label = format!("{prefix}{}", c.label);
            if let Some(sub) = self.lookup(src, &c.component) {
                let sub_ent = self.sources[sub].design.entity(&c.component).unwrap();
                check_ports(decl, sub_ent)?;
                for name in values.keys() {
                    if sub_ent.generic(name).is_none() {
                        return Err(CompileError::InterfaceMismatch { name: decl.name.clone(), what: format!("entity generics (no '{name}')") });
                    }
                }
                if stack.contains(&c.component) {
                    return Err(CompileError::Recursive(c.component.clone()));
                }
                let sub_env = bind_generics(&sub_ent.generics, &values).map_err(|e| match e {
                    CompileError::MissingParameter(p) => CompileError::MissingParameter(format!("{p} of instance {label}")),
                    other => other,
                })?;
                stack.push(c.component.clone());
                let (_, _, m) = self.compile_entity(sub, &c.component, None, &sub_env, &format!("{label}."), fock, stack)?;
                stack.pop();
                return Ok(m);
            }
            let Some(p) = primitive(&c.component) else {
                return Err(CompileError::UnknownComponent(c.component.clone()));
            };
            if decl.inputs().count() != p.cdim {
                return Err(CompileError::InterfaceMismatch { name: decl.name.clone(), what: format!("primitive with {} channels", p.cdim) });
            }
            let mut full = BTreeMap::new();
            for (name, kind) in p.params {
                let v = *values.get(*name).ok_or_else(|| CompileError::MissingParameter(format!("{name} of instance {label}")))?;
                full.insert(name.to_string(), check_kind(name, v, *kind)?);
            }
            if let Some(extra) = values.keys().find(|k| !p.params.iter().any(|(n, _)| n == k)) {
                return Err(CompileError::InterfaceMismatch { name: decl.name.clone(), what: format!("primitive parameters (no '{extra}')") });
            }
            let n = if p.dynamic { fock.get(&label).ok_or_else(|| CompileError::MissingFock(label.clone()))? } else { 1 };
            p.build(&full, &label, n).map_err(|source| CompileError::Evaluation { instance: label, source })
        })?;
        Ok((graph, expr, model))
    }

    /// Entity lookup: the referencing file first, then the others in order.
    fn lookup(&self, from: usize, name: &str) -> Option<usize> {
        std::iter::once(from)
            .chain((0..self.sources.len()).filter(|&i| i != from))
            .find(|&i| self.sources[i].design.entity(name).is_some())
    }
}

fn check_ports(decl: &Interface, ent: &Interface) -> Result<(), CompileError> {
    let same = decl.ports.len() == ent.ports.len() && decl.ports.iter().zip(&ent.ports).all(|(a, b)| a.name == b.name && a.dir == b.dir);
    if same {
        Ok(())
    } else {
        Err(CompileError::InterfaceMismatch { name: decl.name.clone(), what: format!("the ports of entity '{}'", ent.name) })
    }
}

fn check_kind(name: &str, v: Complex64, kind: GenericKind) -> Result<Complex64, CompileError> {
    let ok = match kind {
        GenericKind::Complex => true,
        GenericKind::Real => v.im == 0.0,
        GenericKind::Int => v.im == 0.0 && v.re.fract() == 0.0,
    };
    if ok {
        Ok(v)
    } else {
        let kind = match kind {
            GenericKind::Real => "real",
            GenericKind::Int => "int",
            GenericKind::Complex => "complex",
        };
        Err(CompileError::ParameterKind { name: name.to_string(), value: v, kind })
    }
}

/// Supplied values over declared defaults, checked against the declared kinds.
fn bind_generics(generics: &[Generic], given: &BTreeMap<String, Complex64>) -> Result<ParamEnv, CompileError> {
    let mut env = ParamEnv::new();
    for g in generics {
        let v = match (given.get(&g.name), &g.default) {
            (Some(v), _) => *v,
            (None, Some(d)) => d.eval(&ParamEnv::new())?,
            (None, None) => return Err(CompileError::MissingParameter(g.name.clone())),
        };
        env.insert(g.name.clone(), check_kind(&g.name, v, g.kind)?);
    }
    Ok(env)
}

/// Parses `re`, `re,im` or `(re,im)` into a complex value.
pub fn parse_value(text: &str) -> Option<Complex64> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    match t.split_once(',') {
        Some((a, b)) => Some(Complex64::new(a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => Some(Complex64::new(t.parse().ok()?, 0.0)),
    }
}

#[doc(hidden)]
pub fn diagnostics_of(e: &CompileError) -> Option<&[(String, Diagnostic)]> {
    match e {
        CompileError::Diagnostics(r) => Some(&r.items),
        _ => None,
    }
}
