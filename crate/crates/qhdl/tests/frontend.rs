use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use qhdl_core::{BinOp, ParamExpr};
use qhdl_lang::{parse, pretty, validate, Endpoint};

fn read(name: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits").join(name);
    fs::read_to_string(p).unwrap()
}

#[test]
fn mach_zehnder_design_tree() {
    let d = parse(&read("mach_zehnder.qhdl")).unwrap();
    assert_eq!((d.entities.len(), d.architectures.len()), (1, 1));
    assert_eq!(d.architectures[0].instances.len(), 3);
    let g = validate(&d, "mach_zehnder", None).unwrap();
    let internal: Vec<_> = g.nets.iter().filter(|n| matches!(n.driver, Endpoint::InstanceOut(..)) && matches!(n.sink, Endpoint::InstanceIn(..))).collect();
    assert_eq!(internal.len(), 3);
    assert_eq!(g.nets.len(), 7);
    let upper = g.signal("upper").unwrap();
    assert_eq!((&upper.driver, &upper.sink), (&Endpoint::InstanceOut(0, 0), &Endpoint::InstanceIn(1, 0)));
}

#[test]
fn corpus_round_trips() {
    for name in ["mach_zehnder.qhdl", "pseudo_nand.qhdl", "latch.qhdl", "cavity.qhdl"] {
        let d = parse(&read(name)).unwrap();
        let text = pretty(&d);
        assert_eq!(parse(&text).unwrap(), d, "{name}");
        assert_eq!(pretty(&parse(&text).unwrap()), text);
        let e = &d.entities[0].name;
        assert!(validate(&d, e, None).is_ok(), "{name}");
    }
}

#[test]
fn passthrough_without_instances() {
    let src = "entity wire is port (i : in fieldmode; o : out fieldmode); end;
               architecture a of wire is signal s : fieldmode; begin s <= i; o <= s; end a;";
    let d = parse(src).unwrap();
    let g = validate(&d, "wire", None).unwrap();
    assert_eq!(g.nets.len(), 1);
    assert_eq!(g.nets[0].signals, ["s"]);
    assert_eq!(qhdl_lang::synthesize(&g).unwrap(), qhdl_core::CircuitExpression::identity(1));
}

#[test]
fn assignment_loops_are_rejected() {
    let src = "entity e is port (i : in fieldmode; o : out fieldmode); end;
               architecture a of e is signal s, t : fieldmode; begin o <= i; s <= t; t <= s; end a;";
    let ds = validate(&parse(src).unwrap(), "e", None).unwrap_err();
    assert_eq!(ds.len(), 2);
    assert!(ds[0].message.contains("loop"));
}

#[test]
fn entity_and_architecture_lookup() {
    let d = parse(&read("mach_zehnder.qhdl")).unwrap();
    assert!(validate(&d, "nope", None).unwrap_err()[0].message.contains("unknown entity"));
    assert!(validate(&d, "mach_zehnder", Some("other")).unwrap_err()[0].message.contains("unknown architecture"));
    assert!(validate(&d, "mach_zehnder", Some("structure")).is_ok());
}

fn flip_case(text: &str, mask: &[bool]) -> String {
    text.chars().zip(mask.iter().cycle()).map(|(c, &up)| if up { c.to_ascii_uppercase() } else { c }).collect()
}

fn leaf() -> impl Strategy<Value = ParamExpr> {
    prop_oneof![
        (0.0f64..1e6).prop_map(ParamExpr::Real),
        (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(a, b)| ParamExpr::Complex(a, b)),
        "[a-z][a-z0-9_]{0,6}".prop_filter("keyword", |s| !qhdl_lang::lexer::is_keyword(s)).prop_map(ParamExpr::Var),
    ]
}

fn expr() -> impl Strategy<Value = ParamExpr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| ParamExpr::Neg(Box::new(e))),
            (inner.clone(), inner, 0..4usize).prop_map(|(a, b, op)| {
                let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][op];
                ParamExpr::bin(op, a, b)
            }),
        ]
    })
}

/// Negated literals print as signed literals; the parser folds them only inside complex literals.
fn parser_normal(e: &ParamExpr) -> bool {
    match e {
        ParamExpr::Neg(inner) => parser_normal(inner),
        ParamExpr::Bin(_, a, b) => parser_normal(a) && parser_normal(b),
        _ => true,
    }
}

proptest! {
    #[test]
    fn identifier_case_is_irrelevant(mask in prop::collection::vec(any::<bool>(), 1..64)) {
        for name in ["mach_zehnder.qhdl", "latch.qhdl"] {
            let text = read(name);
            prop_assert_eq!(parse(&flip_case(&text, &mask)).unwrap(), parse(&text).unwrap());
        }
    }

    #[test]
    fn expressions_round_trip(e in expr().prop_filter("normal", parser_normal)) {
        let src = format!("entity e is generic (g : complex := {e}); port (i : in fieldmode; o : out fieldmode); end;");
        let d = parse(&src).unwrap();
        prop_assert_eq!(d.entities[0].generics[0].default.as_ref(), Some(&e));
        prop_assert_eq!(parse(&pretty(&d)).unwrap(), d);
    }
}
