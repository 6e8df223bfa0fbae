//! Symbolic circuit expressions over the Gough-James operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param::ParamExpr;
use crate::slh::check_permutation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamBinding {
    pub name: String,
    pub value: ParamExpr,
}

/// A leaf standing for a referenced component instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentRef {
    /// Component (type) name.
    pub component: String,
    /// Instance label; bindings are looked up by it.
    pub label: String,
    pub cdim: usize,
    #[serde(default)]
    pub params: Vec<ParamBinding>,
}

/// Expression tree; build it through the checked constructors.
///
/// Serialized as a tagged union on `"op"`; feedback indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum CircuitExpression {
    #[serde(rename = "ref")]
    Component(ComponentRef),
    /// `downstream ◁ upstream`.
    Series { upstream: Box<CircuitExpression>, downstream: Box<CircuitExpression> },
    Concat { operands: Vec<CircuitExpression> },
    /// Output `out` fed back into input `input` (both 1-based).
    Feedback { inner: Box<CircuitExpression>, out: usize, input: usize },
    /// Image tuple of the permutation, 1-based.
    Perm { image: Vec<usize> },
    Id { n: usize },
}

use CircuitExpression as E;

impl CircuitExpression {
    pub fn component(component: impl Into<String>, label: impl Into<String>, cdim: usize, params: Vec<ParamBinding>) -> Self {
        E::Component(ComponentRef { component: component.into(), label: label.into(), cdim, params })
    }

    pub fn identity(n: usize) -> Self {
        E::Id { n }
    }

    pub fn permutation(image: Vec<usize>) -> Result<Self> {
        check_permutation(&image)?;
        Ok(E::Perm { image })
    }

    /// `downstream ◁ upstream`: every output of `upstream` feeds `downstream`.
    pub fn series(upstream: Self, downstream: Self) -> Result<Self> {
        let (a, b) = (upstream.cdim(), downstream.cdim());
        if a != b {
            return Err(Error::ChannelMismatch { left: a, right: b });
        }
        Ok(E::Series { upstream: Box::new(upstream), downstream: Box::new(downstream) })
    }

    /// Chains `stages` left to right (first is most upstream).
    pub fn chain(stages: impl IntoIterator<Item = Self>) -> Result<Self> {
        let mut it = stages.into_iter();
        let first = it.next().ok_or(Error::EmptyConcatenation)?;
        it.try_fold(first, Self::series)
    }

    /// Concatenation with nested concatenations flattened; a single operand is returned as is.
    pub fn concat(xs: impl IntoIterator<Item = Self>) -> Result<Self> {
        let mut operands = Vec::new();
        for x in xs {
            match x {
                E::Concat { operands: inner } => operands.extend(inner),
                other => operands.push(other),
            }
        }
        match operands.len() {
            0 => Err(Error::EmptyConcatenation),
            1 => Ok(operands.pop().expect("one operand")),
            _ => Ok(E::Concat { operands }),
        }
    }

    /// `[q]_{k -> l}`, 1-based.
    pub fn feedback(inner: Self, k: usize, l: usize) -> Result<Self> {
        let n = inner.cdim();
        if n < 2 {
            return Err(Error::FeedbackArity(n));
        }
        for index in [k, l] {
            if index == 0 || index > n {
                return Err(Error::ChannelIndex { index, cdim: n });
            }
        }
        Ok(E::Feedback { inner: Box::new(inner), out: k, input: l })
    }

    pub fn cdim(&self) -> usize {
        match self {
            E::Component(c) => c.cdim,
            E::Series { upstream, .. } => upstream.cdim(),
            E::Concat { operands } => operands.iter().map(Self::cdim).sum(),
            E::Feedback { inner, .. } => inner.cdim() - 1,
            E::Perm { image } => image.len(),
            E::Id { n } => *n,
        }
    }

    /// Re-checks every structural invariant (for trees built by hand or deserialized).
    pub fn check(&self) -> Result<()> {
        match self {
            E::Component(_) | E::Id { .. } => Ok(()),
            E::Perm { image } => check_permutation(image),
            E::Series { upstream, downstream } => {
                upstream.check()?;
                downstream.check()?;
                let (a, b) = (upstream.cdim(), downstream.cdim());
                if a != b {
                    return Err(Error::ChannelMismatch { left: a, right: b });
                }
                Ok(())
            }
            E::Concat { operands } => {
                if operands.is_empty() {
                    return Err(Error::EmptyConcatenation);
                }
                operands.iter().try_for_each(Self::check)
            }
            E::Feedback { inner, out, input } => {
                inner.check()?;
                Self::feedback((**inner).clone(), *out, *input).map(|_| ())
            }
        }
    }

    /// Leaves in left-to-right order.
    pub fn components(&self) -> Vec<&ComponentRef> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let E::Component(c) = e {
                out.push(c);
            }
        });
        out
    }

    pub fn count_feedback(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |e| {
            if matches!(e, E::Feedback { .. }) {
                n += 1;
            }
        });
        n
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Self)) {
        f(self);
        match self {
            E::Series { upstream, downstream } => {
                upstream.visit(f);
                downstream.visit(f);
            }
            E::Concat { operands } => operands.iter().for_each(|o| o.visit(f)),
            E::Feedback { inner, .. } => inner.visit(f),
            _ => {}
        }
    }

    /// Replaces every leaf with label `label` by `with` (cdim must match).
    pub fn substitute(&self, label: &str, with: &Self) -> Result<Self> {
        Ok(match self {
            E::Component(c) if c.label == label => {
                if with.cdim() != c.cdim {
                    return Err(Error::BindingArity { label: label.to_string(), expected: c.cdim, got: with.cdim() });
                }
                with.clone()
            }
            E::Series { upstream, downstream } => E::Series {
                upstream: Box::new(upstream.substitute(label, with)?),
                downstream: Box::new(downstream.substitute(label, with)?),
            },
            E::Concat { operands } => {
                Self::concat(operands.iter().map(|o| o.substitute(label, with)).collect::<Result<Vec<_>>>()?)?
            }
            E::Feedback { inner, out, input } => {
                E::Feedback { inner: Box::new(inner.substitute(label, with)?), out: *out, input: *input }
            }
            other => other.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expression serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let e: Self = serde_json::from_str(s).map_err(|e| Error::Model(e.to_string()))?;
        e.check()?;
        Ok(e)
    }
}

impl fmt::Display for CircuitExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::Component(c) => write!(f, "{}", c.label),
            E::Id { n } => write!(f, "𝟙_{n}"),
            E::Perm { image } => {
                let parts: Vec<String> = image.iter().map(usize::to_string).collect();
                write!(f, "P({})", parts.join(" "))
            }
            E::Series { upstream, downstream } => {
                let wrap = |e: &Self| matches!(e, E::Concat { .. });
                if wrap(downstream) {
                    write!(f, "({downstream})")?;
                } else {
                    write!(f, "{downstream}")?;
                }
                write!(f, " ◁ ")?;
                if wrap(upstream) {
                    write!(f, "({upstream})")
                } else {
                    write!(f, "{upstream}")
                }
            }
            E::Concat { operands } => {
                for (k, o) in operands.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ⊞ ")?;
                    }
                    if matches!(o, E::Series { .. } | E::Concat { .. }) {
                        write!(f, "({o})")?;
                    } else {
                        write!(f, "{o}")?;
                    }
                }
                Ok(())
            }
            E::Feedback { inner, out, input } => write!(f, "[{inner}]_{{{out}→{input}}}"),
        }
    }
}
