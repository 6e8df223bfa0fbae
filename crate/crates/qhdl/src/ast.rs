//! Design tree. All identifiers are lowercase.

use qhdl_core::ParamExpr;
use serde::Serialize;

use crate::diag::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenericKind {
    Real,
    Complex,
    Int,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generic {
    pub name: String,
    pub kind: GenericKind,
    pub default: Option<ParamExpr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Port {
    pub name: String,
    pub dir: Direction,
    pub span: Span,
}

/// Entity declarations and component declarations share this shape.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interface {
    pub name: String,
    pub generics: Vec<Generic>,
    pub ports: Vec<Port>,
    pub span: Span,
}

impl Interface {
    pub fn inputs(&self) -> impl Iterator<Item = &Port> {
        self.ports.iter().filter(|p| p.dir == Direction::In)
    }

    pub fn outputs(&self) -> impl Iterator<Item = &Port> {
        self.ports.iter().filter(|p| p.dir == Direction::Out)
    }

    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }

    pub fn generic(&self, name: &str) -> Option<&Generic> {
        self.generics.iter().find(|g| g.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assoc<T> {
    pub formal: String,
    pub actual: T,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub name: String,
    pub component: String,
    pub generic_map: Vec<Assoc<ParamExpr>>,
    /// Actuals are signal or entity port names.
    pub port_map: Vec<Assoc<String>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignalDecl {
    pub name: String,
    pub span: Span,
}

/// `target <= source;`
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assignment {
    pub target: String,
    pub source: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Architecture {
    pub name: String,
    pub entity: String,
    pub components: Vec<Interface>,
    pub signals: Vec<SignalDecl>,
    pub instances: Vec<Instance>,
    pub assignments: Vec<Assignment>,
    pub span: Span,
}

impl Architecture {
    pub fn component(&self, name: &str) -> Option<&Interface> {
        self.components.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Design {
    pub entities: Vec<Interface>,
    pub architectures: Vec<Architecture>,
}

impl Design {
    pub fn entity(&self, name: &str) -> Option<&Interface> {
        self.entities.iter().find(|e| e.name == name)
    }

    /// Named architecture of `entity`, or its first one.
    pub fn architecture(&self, entity: &str, name: Option<&str>) -> Option<&Architecture> {
        self.architectures.iter().find(|a| a.entity == entity && name.is_none_or(|n| a.name == n))
    }
}
