use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64 as C;
use qhdl_core::{Operator, Slh};
use qhdl_lang::{FockDims, Library, Source};

const THETA: f64 = 0.891;
const PHI: f64 = 2.546;
const DELTA: f64 = 50.0;
const CHI: f64 = -5.0 / 6.0;
const KAPPA: f64 = 25.0;

fn beta() -> C {
    C::new(-34.289, -11.909)
}

fn compiled(n: usize) -> Slh {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits");
    let src: Vec<Source> = ["latch.qhdl", "pseudo_nand.qhdl"]
        .iter()
        .map(|f| Source::parse(*f, &fs::read_to_string(dir.join(f)).unwrap()).unwrap())
        .collect();
    let p: BTreeMap<String, C> = [
        ("theta", C::new(THETA, 0.0)),
        ("phi", C::new(PHI, 0.0)),
        ("beta", beta()),
        ("delta", C::new(DELTA, 0.0)),
        ("chi", C::new(CHI, 0.0)),
        ("kappa", C::new(KAPPA, 0.0)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Library { sources: &src }.compile("latch", None, &p, &FockDims::uniform(n)).unwrap().model
}

/// Sum of scaled operators.
fn lin(terms: &[(C, &Operator)]) -> Operator {
    terms.iter().fold(Operator::zero(), |acc, (c, op)| acc.add(&op.scale(*c)).unwrap())
}

/// The latch triplet written out term by term, with inputs s and r fed in.
fn closed_form(n: usize, s: C, r: C) -> Slh {
    let a = Operator::destroy("nand1.kerr", n).unwrap();
    let b = Operator::destroy("nand2.kerr", n).unwrap();
    let one = Operator::one();
    let (ct, st) = (THETA.cos(), THETA.sin());
    let e = C::from_polar(1.0, PHI);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| C::new(x, 0.0);

    let block = [
        [re(h), -e * ct * h, e * st * h],
        [re(h), e * ct * h, -e * st * h],
        [re(0.0), re(st), re(ct)],
    ];
    let mut sm = vec![vec![Operator::zero(); 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            sm[i][j] = Operator::scalar(block[i][j]);
            sm[i + 3][j + 3] = Operator::scalar(block[i][j]);
        }
    }
    let sk = KAPPA.sqrt();
    let sk2 = (KAPPA / 2.0).sqrt();
    let bb = beta();
    let l = vec![
        lin(&[(e * st * sk2, &b), (s * h - bb * h * ct * e, &one)]),
        lin(&[(re(sk), &a), (-e * st * sk2, &b), (s * h + bb * h * ct * e, &one)]),
        lin(&[(re(sk * ct), &b), (bb * st, &one)]),
        lin(&[(e * st * sk2, &a), (r * h - bb * h * ct * e, &one)]),
        lin(&[(re(sk), &b), (-e * st * sk2, &a), (r * h + bb * h * ct * e, &one)]),
        lin(&[(re(sk * ct), &a), (bb * st, &one)]),
    ];

    let ad = a.adjoint();
    let bd = b.adjoint();
    let na = ad.mul(&a).unwrap();
    let nb = bd.mul(&b).unwrap();
    let kerr_a = ad.mul(&ad).unwrap().mul(&a).unwrap().mul(&a).unwrap();
    let kerr_b = bd.mul(&bd).unwrap().mul(&b).unwrap().mul(&b).unwrap();
    let hop = a.mul(&bd).unwrap().add(&ad.mul(&b).unwrap()).unwrap();
    let pre = C::new(0.0, (2.0 * KAPPA).sqrt() / 4.0);
    let drive = |inp: C, x: &Operator| {
        let z = inp.conj() + bb.conj() * ct * e.conj();
        let t = x.scale(z);
        t.sub(&t.adjoint()).unwrap().scale(pre)
    };
    let ham = lin(&[
        (re(DELTA), &na),
        (re(DELTA), &nb),
        (re(CHI), &kerr_a),
        (re(CHI), &kerr_b),
        (re(-KAPPA * h * st * PHI.sin()), &hop),
        (re(1.0), &drive(s, &a)),
        (re(1.0), &drive(r, &b)),
    ]);
    Slh::new(sm, l, ham).unwrap()
}

#[test]
fn compiled_latch_matches_the_closed_form() {
    let n = 6;
    let model = compiled(n);
    for (s, r) in [(C::new(22.6274, 0.0), C::new(22.6274, 0.0)), (C::new(0.0, 0.0), C::new(22.6274, 0.0)), (C::new(0.3, -0.7), C::new(-1.1, 0.25))] {
        let fed = model.feed_inputs(&[s, C::new(0.0, 0.0), C::new(0.0, 0.0), r, C::new(0.0, 0.0), C::new(0.0, 0.0)]).unwrap();
        let want = closed_form(n, s, r);
        let d = fed.max_abs_diff(&want).unwrap();
        assert!(d < 1e-9, "inputs ({s}, {r}): max difference {d}");
    }
}
