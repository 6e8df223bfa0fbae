//! Canonical QHDL text for a design tree; re-parsing it yields an equal tree.

use std::fmt::Write;

use crate::ast::*;

pub fn pretty(design: &Design) -> String {
    let mut out = String::new();
    for e in &design.entities {
        write_entity(&mut out, e);
        out.push('\n');
        for a in design.architectures.iter().filter(|a| a.entity == e.name) {
            write_architecture(&mut out, a);
            out.push('\n');
        }
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    out
}

fn kind(k: GenericKind) -> &'static str {
    match k {
        GenericKind::Real => "real",
        GenericKind::Complex => "complex",
        GenericKind::Int => "int",
    }
}

fn write_interface(out: &mut String, iface: &Interface, indent: &str) {
    if !iface.generics.is_empty() {
        let items: Vec<String> = iface
            .generics
            .iter()
            .map(|g| match &g.default {
                Some(d) => format!("{} : {} := {d}", g.name, kind(g.kind)),
                None => format!("{} : {}", g.name, kind(g.kind)),
            })
            .collect();
        let _ = writeln!(out, "{indent}    generic ({});", items.join("; "));
    }
    let ports: Vec<String> = iface
        .ports
        .iter()
        .map(|p| format!("{} : {} fieldmode", p.name, if p.dir == Direction::In { "in" } else { "out" }))
        .collect();
    let _ = writeln!(out, "{indent}    port ({});", ports.join("; "));
}

fn write_entity(out: &mut String, e: &Interface) {
    let _ = writeln!(out, "entity {} is", e.name);
    write_interface(out, e, "");
    let _ = writeln!(out, "end {};", e.name);
}

fn write_architecture(out: &mut String, a: &Architecture) {
    let _ = writeln!(out, "architecture {} of {} is", a.name, a.entity);
    for c in &a.components {
        let _ = writeln!(out, "    component {}", c.name);
        write_interface(out, c, "    ");
        let _ = writeln!(out, "    end component {};", c.name);
    }
    if !a.signals.is_empty() {
        let names: Vec<&str> = a.signals.iter().map(|s| s.name.as_str()).collect();
        let _ = writeln!(out, "    signal {} : fieldmode;", names.join(", "));
    }
    let _ = writeln!(out, "begin");
    for i in &a.instances {
        let _ = write!(out, "    {} : {}", i.name, i.component);
        if !i.generic_map.is_empty() {
            let items: Vec<String> = i.generic_map.iter().map(|g| format!("{} => {}", g.formal, g.actual)).collect();
            let _ = write!(out, "\n        generic map ({})", items.join(", "));
        }
        let items: Vec<String> = i.port_map.iter().map(|p| format!("{} => {}", p.formal, p.actual)).collect();
        let _ = writeln!(out, "\n        port map ({});", items.join(", "));
    }
    for s in &a.assignments {
        let _ = writeln!(out, "    {} <= {};", s.target, s.source);
    }
    let _ = writeln!(out, "end {};", a.name);
}
