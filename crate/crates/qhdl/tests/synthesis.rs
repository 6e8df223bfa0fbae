use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::path::Path;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qhdl_core::components::{beamsplitter, displace, kerr_cavity, phase, KerrCavity};
use qhdl_core::{evaluate, Bindings, CircuitExpression as E, Slh};
use qhdl_lang::{parse, synthesize, validate, CompileError, Endpoint, FockDims, Library, Source};

fn source(name: &str) -> Source {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits").join(name);
    Source::parse(name, &fs::read_to_string(p).unwrap()).unwrap()
}

fn params(items: &[(&str, C)]) -> BTreeMap<String, C> {
    items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn r(x: f64) -> C {
    C::new(x, 0.0)
}

fn scalar_s(q: &Slh) -> Vec<Vec<C>> {
    q.s().iter().map(|row| row.iter().map(|o| o.as_scalar().unwrap()).collect()).collect()
}

fn latch_params() -> BTreeMap<String, C> {
    params(&[
        ("theta", r(0.891)),
        ("phi", r(2.546)),
        ("beta", C::new(-34.289, -11.909)),
        ("delta", r(50.0)),
        ("chi", r(-5.0 / 6.0)),
        ("kappa", r(25.0)),
    ])
}

#[test]
fn mach_zehnder_matches_matrix_product() {
    let src = [source("mach_zehnder.qhdl")];
    let phi = 1.234;
    let c = Library { sources: &src }.compile("mach_zehnder", None, &params(&[("phi", r(phi))]), &FockDims::default()).unwrap();
    assert_eq!(c.expression.count_feedback(), 6);
    // B diag(e^{i phi}, 1) B, B the pi/4 beamsplitter
    let h = FRAC_1_SQRT_2;
    let b = [[r(h), r(-h)], [r(h), r(h)]];
    let d = [C::from_polar(1.0, phi), r(1.0)];
    let s = scalar_s(&c.model);
    for i in 0..2 {
        for j in 0..2 {
            let want: C = (0..2).map(|k| b[i][k] * d[k] * b[k][j]).sum();
            assert!((s[i][j] - want).norm() < 1e-14);
        }
    }
    assert!(c.model.space().unwrap().is_trivial());
    assert_eq!(c.inputs, ["a", "b"]);
}

#[test]
fn permutation_convention_on_asymmetric_wiring() {
    // x <- c, y <- b, z <- a, each through its own phase
    let text = "entity e is generic (p1, p2, p3 : real); port (a, b, c : in fieldmode; x, y, z : out fieldmode); end;
        architecture s of e is
            component phase generic (phi : real); port (i : in fieldmode; o : out fieldmode); end component;
        begin
            u1 : phase generic map (phi => p1) port map (i => c, o => x);
            u2 : phase generic map (phi => p2) port map (i => a, o => z);
            u3 : phase generic map (phi => p3) port map (i => b, o => y);
        end s;";
    let src = [Source::parse("fixture", text).unwrap()];
    let (p1, p2, p3) = (0.3, 1.1, 2.0);
    let c = Library { sources: &src }.compile("e", None, &params(&[("p1", r(p1)), ("p2", r(p2)), ("p3", r(p3))]), &FockDims::default()).unwrap();
    let s = scalar_s(&c.model);
    let mut want = vec![vec![r(0.0); 3]; 3];
    want[0][2] = C::from_polar(1.0, p1);
    want[2][0] = C::from_polar(1.0, p2);
    want[1][1] = C::from_polar(1.0, p3);
    for i in 0..3 {
        for j in 0..3 {
            assert!((s[i][j] - want[i][j]).norm() < 1e-15, "S[{i}][{j}]");
        }
    }
    // sigma_in sends entity input a (1) to channel 2 (u2's input), etc.
    let E::Series { upstream, .. } = &c.expression else { panic!("expected outer series") };
    let E::Series { upstream: p_in, .. } = &**upstream else { panic!("expected inner series") };
    assert_eq!(**p_in, E::Perm { image: vec![2, 3, 1] });
}

fn eq4_bindings(n: usize) -> Bindings {
    let k = kerr_cavity(&KerrCavity { detuning: 50.0, chi: -5.0 / 6.0, kappa_1: 25.0, kappa_2: 25.0 }, "kerr", n).unwrap();
    let mut b = Bindings::new();
    b.insert("B1".into(), beamsplitter(std::f64::consts::FRAC_PI_4));
    b.insert("B2".into(), beamsplitter(0.891));
    b.insert("Phi".into(), phase(2.546));
    b.insert("W".into(), displace(C::new(-34.289, -11.909)));
    b.insert("K".into(), k);
    b
}

fn eq4() -> E {
    let leaf = |n: &str, c| E::component(n, n, c, vec![]);
    let cat = |xs: Vec<E>| E::concat(xs).unwrap();
    let ser = |down: E, up: E| E::series(up, down).unwrap();
    let lower = ser(
        ser(cat(vec![E::identity(1), ser(cat(vec![leaf("Phi", 1), E::identity(1)]), leaf("B2", 2))]), E::permutation(vec![1, 3, 2]).unwrap()),
        cat(vec![leaf("K", 2), E::identity(1)]),
    );
    ser(
        cat(vec![E::identity(1), lower]),
        cat(vec![leaf("B1", 2), ser(E::permutation(vec![2, 1]).unwrap(), cat(vec![leaf("W", 1), E::identity(1)]))]),
    )
}

#[test]
fn pseudo_nand_matches_the_printed_expression() {
    let src = [source("pseudo_nand.qhdl")];
    let p = params(&[
        ("theta", r(0.891)),
        ("phi", r(2.546)),
        ("beta", C::new(-34.289, -11.909)),
        ("delta", r(50.0)),
        ("chi", r(-5.0 / 6.0)),
        ("kappa", r(25.0)),
    ]);
    for n in [3, 6] {
        let c = Library { sources: &src }.compile("pseudo_nand", None, &p, &FockDims::uniform(n)).unwrap();
        assert_eq!(c.model.cdim(), 4);
        let want = evaluate(&eq4(), &eq4_bindings(n)).unwrap();
        let d = c.model.max_abs_diff(&want).unwrap();
        assert!(d < 1e-10, "N = {n}: {d}");
    }
}

#[test]
fn latch_compiles_hierarchically() {
    let src = [source("latch.qhdl"), source("pseudo_nand.qhdl")];
    let c = Library { sources: &src }.compile("latch", None, &latch_params(), &FockDims::uniform(4)).unwrap();
    assert_eq!(c.model.cdim(), 6);
    let space = c.model.space().unwrap();
    let modes: Vec<_> = space.modes().iter().map(|m| (m.label.as_str(), m.dim)).collect();
    assert_eq!(modes, [("nand1.kerr", 4), ("nand2.kerr", 4)]);
    assert!(c.model.residuals().unwrap().within(1e-10));

    let mut fock = FockDims::default();
    fock.per_mode.insert("nand1.kerr".into(), 3);
    fock.per_mode.insert("nand2.kerr".into(), 2);
    let c = Library { sources: &src }.compile("latch", None, &latch_params(), &fock).unwrap();
    assert_eq!(c.model.space().unwrap().dim(), 6);
}

#[test]
fn compile_errors() {
    let src = [source("mach_zehnder.qhdl")];
    let lib = Library { sources: &src };
    let err = lib.compile("mach_zehnder", None, &BTreeMap::new(), &FockDims::default()).unwrap_err();
    assert_eq!(err.to_string(), "missing parameter phi");
    let err = lib.compile("mach_zehnder", None, &params(&[("phi", r(0.0)), ("psi", r(1.0))]), &FockDims::default()).unwrap_err();
    assert!(matches!(err, CompileError::UnknownParameter(p) if p == "psi"));
    let err = lib.compile("mach_zehnder", None, &params(&[("phi", C::new(0.0, 1.0))]), &FockDims::default()).unwrap_err();
    assert!(matches!(err, CompileError::ParameterKind { .. }));

    let latch = [source("latch.qhdl")];
    let err = Library { sources: &latch }.compile("latch", None, &latch_params(), &FockDims::uniform(3)).unwrap_err();
    assert!(matches!(err, CompileError::UnknownComponent(c) if c == "pseudo_nand"));
    let both = [source("latch.qhdl"), source("pseudo_nand.qhdl")];
    let err = Library { sources: &both }.compile("latch", None, &latch_params(), &FockDims::default()).unwrap_err();
    assert_eq!(err.to_string(), "missing Fock dimension for mode 'nand1.kerr'");

    let bs_only = "entity bs is generic (theta : real); port (a, b : in fieldmode; c, d : out fieldmode); end;
        architecture s of bs is
            component beamsplitter generic (theta : real); port (i1, i2 : in fieldmode; o1, o2 : out fieldmode); end component;
        begin u : beamsplitter generic map (theta => theta) port map (i1 => a, i2 => b, o1 => c, o2 => d); end s;";
    let src = [Source::parse("bs", bs_only).unwrap()];
    let err = Library { sources: &src }.compile("bs", None, &BTreeMap::new(), &FockDims::default()).unwrap_err();
    assert_eq!(err.to_string(), "missing parameter theta");
}

#[test]
fn self_instantiation_is_rejected() {
    let text = "entity r is port (a : in fieldmode; b : out fieldmode); end;
        architecture s of r is
            component r port (a : in fieldmode; b : out fieldmode); end component;
        begin u : r port map (a => a, b => b); end s;";
    let src = [Source::parse("r", text).unwrap()];
    let err = Library { sources: &src }.compile("r", None, &BTreeMap::new(), &FockDims::default()).unwrap_err();
    assert!(matches!(err, CompileError::Recursive(_)));
}

#[test]
fn feedback_count_is_two_per_internal_net() {
    for (file, entity) in [("mach_zehnder.qhdl", "mach_zehnder"), ("pseudo_nand.qhdl", "pseudo_nand"), ("latch.qhdl", "latch")] {
        let d = parse(&fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits").join(file)).unwrap()).unwrap();
        let g = validate(&d, entity, None).unwrap();
        let internal = g.nets.iter().filter(|n| matches!((&n.driver, &n.sink), (Endpoint::InstanceOut(..), Endpoint::InstanceIn(..)))).count();
        let e = synthesize(&g).unwrap();
        assert_eq!(e.count_feedback(), 2 * internal, "{file}");
        assert_eq!(e.cdim(), g.inputs.len());
    }
}

fn shuffled_pseudo_nand(order: &[usize], reverse_signals: bool) -> String {
    let text = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits/pseudo_nand.qhdl")).unwrap();
    let (head, rest) = text.split_once("begin\n").unwrap();
    let (body, tail) = rest.split_once("end structure;").unwrap();
    let instances: Vec<String> = body.split_inclusive(";\n").map(str::to_string).collect();
    assert_eq!(instances.len(), 5);
    let mut head = head.to_string();
    if reverse_signals {
        head = head.replace("signal mixed, bias, leak, out_raw", "signal out_raw, leak, bias, mixed");
    }
    let body: String = order.iter().map(|&i| instances[i].clone()).collect();
    format!("{head}begin\n{body}end structure;{tail}")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn declaration_order_does_not_change_the_model(order in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), rev in any::<bool>()) {
        let p = params(&[
            ("theta", r(0.891)),
            ("phi", r(2.546)),
            ("beta", C::new(-3.4, -1.2)),
            ("delta", r(5.0)),
            ("chi", r(-0.5)),
            ("kappa", r(2.5)),
        ]);
        let base = [source("pseudo_nand.qhdl")];
        let want = Library { sources: &base }.compile("pseudo_nand", None, &p, &FockDims::uniform(4)).unwrap().model;
        let src = [Source::parse("shuffled", &shuffled_pseudo_nand(&order, rev)).unwrap()];
        let got = Library { sources: &src }.compile("pseudo_nand", None, &p, &FockDims::uniform(4)).unwrap().model;
        prop_assert!(got.max_abs_diff(&want).unwrap() < 1e-12);
    }
}
