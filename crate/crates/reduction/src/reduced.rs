//! SLH realizations of a reduced Markov model.
//!
//! The reduced space is a single mode whose basis vectors are the reduced
//! states; state `i` (0-based) is `|i+1⟩`.

use qhdl_core::{HilbertSpace, Operator, Slh, C64};

use crate::error::{ReductionError, Result};
use crate::markov::RateMatrix;

/// Mode label of the reduced state space.
pub const STATE_MODE: &str = "state";

fn ket_bra(m: usize, row: usize, col: usize) -> Result<Operator> {
    Ok(Operator::transition(STATE_MODE, m, row, col)?)
}

/// `K` decay channels `√γ_ij |j⟩⟨i|`, one per positive rate, row-major.
pub fn jump_slh(q: &RateMatrix) -> Result<Slh> {
    let m = q.states();
    let l = q
        .transitions()
        .into_iter()
        .map(|(i, j, g)| Ok(ket_bra(m, j, i)?.scale(C64::new(g.sqrt(), 0.0))))
        .collect::<Result<Vec<_>>>()?;
    let k = l.len();
    let h = if m > 0 { Operator::identity(&HilbertSpace::single(STATE_MODE, m)?).scale(C64::new(0.0, 0.0)) } else { Operator::zero() };
    Ok(Slh::new(Slh::identity(k).s().to_vec(), l, h)?)
}

/// `Σ_S` and `Σ_R` as 0-based `(row, col)` pairs.
pub fn drift_pairs(m: usize) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    if m < 6 || m % 4 != 2 {
        return Err(ReductionError::StateCount(m));
    }
    // 1-based: Σ_S = Σ |M-4-2k⟩⟨M-1-2k| down to |M/2-1⟩⟨M/2+2|,
    //          Σ_R = Σ |5+2k⟩⟨2+2k|   up to   |M/2+2⟩⟨M/2-1|
    let half = m / 2;
    let set = (0..).map(|k| (m - 4 - 2 * k, m - 1 - 2 * k)).take_while(|&(_, c)| c >= half + 2).map(|(r, c)| (r - 1, c - 1)).collect();
    let reset = (0..).map(|k| (5 + 2 * k, 2 + 2 * k)).take_while(|&(_, c)| c <= half - 1).map(|(r, c)| (r - 1, c - 1)).collect();
    Ok((set, reset))
}

fn sum_of(m: usize, pairs: &[(usize, usize)]) -> Result<Operator> {
    pairs.iter().try_fold(Operator::zero(), |acc, &(r, c)| Ok(acc.add(&ket_bra(m, r, c)?)?))
}

/// The drift operators `(Σ_S, Σ_R)` on an `m`-state space.
pub fn drift_operators(m: usize) -> Result<(Operator, Operator)> {
    let (set, reset) = drift_pairs(m)?;
    Ok((sum_of(m, &set)?.embed(&HilbertSpace::single(STATE_MODE, m)?)?, sum_of(m, &reset)?.embed(&HilbertSpace::single(STATE_MODE, m)?)?))
}

/// Four-channel drive model: channels 1 and 2 take the `S̄` and `R̄` fields.
pub fn drive_slh(m: usize, alpha: C64) -> Result<Slh> {
    let (ss, sr) = drift_operators(m)?;
    let one = Operator::identity(&HilbertSpace::single(STATE_MODE, m)?);
    let zero = one.scale(C64::new(0.0, 0.0));
    let p = |x: &Operator| -> Result<Operator> { Ok(x.adjoint().mul(x)?) };
    let q = |x: &Operator| -> Result<Operator> { Ok(x.mul(&x.adjoint())?) };
    let (ps, pr) = (p(&ss)?, p(&sr)?);
    let block = [
        [ps.clone(), zero.clone(), ss.adjoint().neg(), zero.clone()],
        [zero.clone(), pr.clone(), zero.clone(), sr.adjoint().neg()],
        [ss.neg(), zero.clone(), q(&ss)?, zero.clone()],
        [zero.clone(), sr.neg(), zero.clone(), q(&sr)?],
    ];
    let mut s = Vec::with_capacity(4);
    for (r, row) in block.iter().enumerate() {
        s.push(
            row.iter()
                .enumerate()
                .map(|(c, x)| if r == c { one.sub(x) } else { Ok(x.neg()) })
                .collect::<qhdl_core::Result<Vec<_>>>()?,
        );
    }
    let l = [one.sub(&ps)?, one.sub(&pr)?, ss, sr].iter().map(|x| x.scale(-alpha)).collect();
    Ok(Slh::new(s, l, zero)?)
}

/// `drive ◁ (W(S̄) ⊞ W(R̄) ⊞ 1₂)` concatenated with the jump model.
pub fn compose_reduced(jump: &Slh, drive: &Slh, s_bar: C64, r_bar: C64) -> Result<Slh> {
    let zero = C64::new(0.0, 0.0);
    let mut inputs = vec![s_bar, r_bar];
    inputs.resize(drive.cdim(), zero);
    Ok(drive.feed_inputs(&inputs)?.concatenate(jump)?)
}

/// Per-state scattering parameters of the output emulator.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OutputBlock {
    pub theta: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// Two-channel emulator routing a bias field `β'` by internal state.
pub fn output_slh(blocks: &[OutputBlock], beta: C64) -> Result<Slh> {
    let m = blocks.len();
    let entry = |r: usize, c: usize| -> Result<Operator> {
        let diag: Vec<C64> = blocks
            .iter()
            .map(|b| {
                let (s, co) = b.theta.sin_cos();
                let phase = C64::from_polar(1.0, if r == 0 { b.phi1 } else { b.phi2 });
                phase * match (r, c) {
                    (0, 0) | (1, 1) => co,
                    (0, 1) => -s,
                    _ => s,
                }
            })
            .collect();
        let space = HilbertSpace::single(STATE_MODE, m)?;
        Ok(Operator::new(space, qhdl_core::SparseMatrix::diagonal(&diag))?)
    };
    let s = vec![vec![entry(0, 0)?, entry(0, 1)?], vec![entry(1, 0)?, entry(1, 1)?]];
    let l = vec![s[0][0].scale(beta), s[1][0].scale(beta)];
    let h = s[0][0].scale(C64::new(0.0, 0.0));
    Ok(Slh::new(s, l, h)?)
}

/// Least-squares `α` from the extra SET and RESET rates on the drift
/// transitions, `|α|² ≈ mean(γ_cond − γ_hold)`. Returns 0 when the excess is
/// not positive.
pub fn suggest_alpha(hold: &RateMatrix, set: Option<&RateMatrix>, reset: Option<&RateMatrix>) -> Result<f64> {
    let m = hold.states();
    let (sp, rp) = drift_pairs(m)?;
    let mut excess = Vec::new();
    // a pair (row, col) of Σ is the transition col -> row
    for (q, pairs) in [(set, &sp), (reset, &rp)] {
        if let Some(q) = q {
            if q.states() != m {
                return Err(ReductionError::StateIndex { state: q.states(), m });
            }
            excess.extend(pairs.iter().map(|&(r, c)| q.0[c][r] - hold.0[c][r]));
        }
    }
    if excess.is_empty() {
        return Ok(0.0);
    }
    let mean = excess.iter().sum::<f64>() / excess.len() as f64;
    Ok(mean.max(0.0).sqrt())
}
