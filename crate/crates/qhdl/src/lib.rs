//! QHDL frontend: lexing, parsing and validation of structural netlists,
//! synthesis of circuit expressions and hierarchical compilation to SLH models.

pub mod ast;
pub mod compile;
pub mod diag;
pub mod lexer;
pub mod library;
pub mod parser;
pub mod pretty;
pub mod synth;
pub mod validate;

pub use compile::{parse_value, synthesize_entity, CompileError, Compiled, FockDims, Library, Source};
pub use diag::{Diagnostic, Report, Span};
pub use parser::parse;
pub use pretty::pretty;
pub use synth::synthesize;
pub use validate::{validate, Endpoint, Net, NetlistGraph};
