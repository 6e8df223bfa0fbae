//! Local rewrite rules for circuit expressions.
//!
//! Rules, applied bottom-up until nothing changes:
//! - permutation composition `P(s2) ◁ P(s1) -> P(s2 ∘ s1)`, identity tuples become `𝟙_n`;
//! - identity absorption in series;
//! - merging of adjacent identities in a concatenation;
//! - series chains are kept right-leaning (the upstream side nests);
//! - block-parallel fusion `(A ⊞ B) ◁ (C ⊞ D) -> (A ◁ C) ⊞ (B ◁ D)` whenever the
//!   channel boundaries of both sides line up, splitting identities if needed.

use crate::circuit::CircuitExpression as E;

const MAX_PASSES: usize = 64;

pub fn simplify(e: &E) -> E {
    let mut cur = e.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn pass(e: &E) -> E {
    match e {
        E::Perm { image } => {
            if image.iter().enumerate().all(|(k, &x)| x == k + 1) {
                E::Id { n: image.len() }
            } else {
                e.clone()
            }
        }
        E::Concat { operands } => concat_rules(operands.iter().map(pass).collect()),
        E::Feedback { inner, out, input } => E::Feedback { inner: Box::new(pass(inner)), out: *out, input: *input },
        E::Series { .. } => {
            let mut stages = Vec::new();
            flatten_series(e, &mut stages);
            series_rules(stages.into_iter().map(|s| pass(&s)).collect())
        }
        E::Component(_) | E::Id { .. } => e.clone(),
    }
}

fn concat_rules(ops: Vec<E>) -> E {
    let mut out: Vec<E> = Vec::with_capacity(ops.len());
    for op in ops {
        let parts = match op {
            E::Concat { operands } => operands,
            other => vec![other],
        };
        for p in parts {
            match (out.last_mut(), &p) {
                (Some(E::Id { n }), E::Id { n: m }) => *n += m,
                _ => out.push(p),
            }
        }
    }
    if out.len() == 1 {
        out.pop().expect("one operand")
    } else {
        E::Concat { operands: out }
    }
}

/// Upstream-first list of the stages of a series chain.
fn flatten_series(e: &E, out: &mut Vec<E>) {
    match e {
        E::Series { upstream, downstream } => {
            flatten_series(upstream, out);
            flatten_series(downstream, out);
        }
        other => out.push(other.clone()),
    }
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    // second ∘ first
    first.iter().map(|&x| second[x - 1]).collect()
}

fn series_rules(stages: Vec<E>) -> E {
    let n = stages[0].cdim();
    let mut kept: Vec<E> = Vec::with_capacity(stages.len());
    for st in stages {
        if matches!(st, E::Id { .. }) {
            continue;
        }
        match (kept.last_mut(), &st) {
            (Some(E::Perm { image: first }), E::Perm { image: second }) => {
                let composed = compose(first, second);
                if composed.iter().enumerate().all(|(k, &x)| x == k + 1) {
                    kept.pop();
                } else {
                    *first = composed;
                }
            }
            (Some(prev), _) => {
                if let Some(fused) = fuse(prev, &st) {
                    *prev = fused;
                } else {
                    kept.push(st);
                }
            }
            (None, _) => kept.push(st),
        }
    }
    let mut it = kept.into_iter();
    let Some(first) = it.next() else {
        return E::Id { n };
    };
    // right-leaning: the accumulated upstream part nests under each new downstream stage
    it.fold(first, |acc, st| E::Series { upstream: Box::new(acc), downstream: Box::new(st) })
}

/// Operand list with identities expanded into unit channels.
fn atoms(e: &E) -> Option<Vec<E>> {
    match e {
        E::Concat { operands } => Some(
            operands
                .iter()
                .flat_map(|o| match o {
                    E::Id { n } => vec![E::Id { n: 1 }; *n],
                    other => vec![other.clone()],
                })
                .collect(),
        ),
        _ => None,
    }
}

fn boundaries(atoms: &[E]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = vec![0];
    for a in atoms {
        acc += a.cdim();
        out.push(acc);
    }
    out
}

fn groups(atoms: Vec<E>, cuts: &[usize]) -> Vec<Vec<E>> {
    let mut out = vec![Vec::new(); cuts.len() - 1];
    let mut pos = 0;
    let mut g = 0;
    for a in atoms {
        while pos >= cuts[g + 1] {
            g += 1;
        }
        pos += a.cdim();
        out[g].push(a);
    }
    out
}

/// Block-parallel fusion of `down ◁ up`.
fn fuse(up: &E, down: &E) -> Option<E> {
    let (ua, da) = (atoms(up)?, atoms(down)?);
    let (ub, db) = (boundaries(&ua), boundaries(&da));
    let common: Vec<usize> = ub.iter().copied().filter(|b| db.contains(b)).collect();
    if common.len() <= 2 {
        return None;
    }
    let blocks = groups(ua, &common)
        .into_iter()
        .zip(groups(da, &common))
        .map(|(u, d)| {
            let (u, d) = (concat_rules(u), concat_rules(d));
            series_rules(vec![u, d])
        })
        .collect();
    Some(concat_rules(blocks))
}
