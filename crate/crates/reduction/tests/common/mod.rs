use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples a continuous-time Markov jump process with generator `q` on a
/// grid of spacing `dt`, by exact exponential holding times.
pub fn sample_jump_process(q: &[Vec<f64>], start: usize, dt: f64, samples: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut out = Vec::with_capacity(samples);
    let mut state = start;
    let mut next_jump = holding_time(q, state, rng);
    for k in 0..samples {
        let grid = k as f64 * dt;
        while next_jump <= grid {
            state = next_state(q, state, rng);
            next_jump += holding_time(q, state, rng);
        }
        out.push(state);
    }
    out
}

fn holding_time(q: &[Vec<f64>], i: usize, rng: &mut impl Rng) -> f64 {
    let rate = -q[i][i];
    if rate <= 0.0 {
        f64::INFINITY
    } else {
        -(1.0 - rng.gen::<f64>()).ln() / rate
    }
}

fn next_state(q: &[Vec<f64>], i: usize, rng: &mut impl Rng) -> usize {
    let mut r = rng.gen::<f64>() * -q[i][i];
    for (j, &g) in q[i].iter().enumerate() {
        if j != i && g > 0.0 {
            if r < g {
                return j;
            }
            r -= g;
        }
    }
    (0..q.len()).rev().find(|&j| j != i && q[i][j] > 0.0).unwrap()
}

/// `exp(t Q)` by nalgebra's matrix exponential.
pub fn expm(q: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    let n = q.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |r, c| q[r][c] * t).exp();
    (0..n).map(|r| (0..n).map(|c| m[(r, c)]).collect()).collect()
}
