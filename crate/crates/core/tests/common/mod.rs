#![allow(dead_code)]

use qhdl_core::{CircuitExpression as E, Slh, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random unitary by Gram-Schmidt on a random complex matrix (columns).
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| rand_c(rng)).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
}

pub fn random_static(rng: &mut ChaCha8Rng, n: usize) -> Slh {
    let s = random_unitary(rng, n);
    let l: Vec<C64> = (0..n).map(|_| rand_c(rng)).collect();
    Slh::from_scalars(&s, &l, rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn leaf(name: &str, n: usize) -> E {
    E::component(name, name, n, vec![])
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}

/// Random well-formed expression of channel count `n`; leaves are named `c0, c1, ...`.
pub fn random_expr(rng: &mut ChaCha8Rng, n: usize, depth: usize, leaves: &mut Vec<(String, usize)>) -> E {
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..7) };
    match choice {
        0 => {
            let name = format!("c{}", leaves.len());
            leaves.push((name.clone(), n));
            leaf(&name, n)
        }
        1 => E::identity(n),
        2 => E::permutation(random_perm(rng, n)).unwrap(),
        3 | 4 => {
            let a = random_expr(rng, n, depth - 1, leaves);
            let b = random_expr(rng, n, depth - 1, leaves);
            E::series(a, b).unwrap()
        }
        5 if n >= 2 => {
            let split = rng.gen_range(1..n);
            let a = random_expr(rng, split, depth - 1, leaves);
            let b = random_expr(rng, n - split, depth - 1, leaves);
            E::concat([a, b]).unwrap()
        }
        _ => {
            let inner = random_expr(rng, n + 1, depth - 1, leaves);
            let k = rng.gen_range(1..=n + 1);
            let l = rng.gen_range(1..=n + 1);
            E::feedback(inner, k, l).unwrap()
        }
    }
}
