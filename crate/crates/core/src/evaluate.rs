//! Evaluation of circuit expressions to concrete triplets.

use std::collections::BTreeMap;

use crate::circuit::{CircuitExpression as E, ComponentRef};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::slh::SlhTriplet;

/// Instance label -> constructed triplet.
pub type Bindings<T> = BTreeMap<String, SlhTriplet<T>>;

pub fn evaluate<T: Real>(e: &E, bindings: &Bindings<T>) -> Result<SlhTriplet<T>> {
    evaluate_with(e, &mut |c: &ComponentRef| bindings.get(&c.label).cloned().ok_or_else(|| Error::Unbound(c.label.clone())))
}

/// Evaluates with leaves resolved on demand by `resolve`.
pub fn evaluate_with<T, F, Err>(e: &E, resolve: &mut F) -> std::result::Result<SlhTriplet<T>, Err>
where
    T: Real,
    F: FnMut(&ComponentRef) -> std::result::Result<SlhTriplet<T>, Err>,
    Err: From<Error>,
{
    Ok(match e {
        E::Component(c) => {
            let q = resolve(c)?;
            if q.cdim() != c.cdim {
                return Err(Error::BindingArity { label: c.label.clone(), expected: c.cdim, got: q.cdim() }.into());
            }
            q
        }
        E::Series { upstream, downstream } => {
            let up = evaluate_with(upstream, resolve)?;
            let down = evaluate_with(downstream, resolve)?;
            down.series(&up)?
        }
        E::Concat { operands } => {
            let mut acc = SlhTriplet::trivial();
            for o in operands {
                acc = acc.concatenate(&evaluate_with(o, resolve)?)?;
            }
            acc
        }
        E::Feedback { inner, out, input } => evaluate_with(inner, resolve)?.feedback(*out, *input)?,
        E::Perm { image } => SlhTriplet::permutation(image)?,
        E::Id { n } => SlhTriplet::identity(*n),
    })
}
