//! Recursive-descent parser for the QHDL grammar.

use std::collections::HashSet;

use qhdl_core::{BinOp, ParamExpr};

use crate::ast::*;
use crate::diag::{Diagnostic, Span};
use crate::lexer::{tokenize, Tok, Token};

type PResult<T> = Result<T, Diagnostic>;

pub fn parse(source: &str) -> PResult<Design> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let design = p.file()?;
    check_design(&design)?;
    Ok(design)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        Diagnostic::new(self.span(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(name) => Ok((name, self.bump().span)),
            _ => Err(self.unexpected("identifier")),
        }
    }

    /// `end [name] ;` with an optional leading keyword such as `component`.
    fn end(&mut self, keyword: Option<Tok>, name: &str) -> PResult<()> {
        self.expect(Tok::End)?;
        if let Some(k) = keyword {
            self.expect(k)?;
        }
        if let Tok::Ident(closing) = self.peek().clone() {
            if closing != name {
                return Err(Diagnostic::new(self.span(), format!("'end {closing}' does not match '{name}'")));
            }
            self.bump();
        }
        self.expect(Tok::Semi)?;
        Ok(())
    }

    fn file(&mut self) -> PResult<Design> {
        let mut d = Design::default();
        loop {
            match self.peek() {
                Tok::Entity => d.entities.push(self.entity()?),
                Tok::Architecture => d.architectures.push(self.architecture()?),
                Tok::Eof => return Ok(d),
                _ => return Err(self.unexpected("'entity' or 'architecture'")),
            }
        }
    }

    fn entity(&mut self) -> PResult<Interface> {
        let span = self.expect(Tok::Entity)?;
        let (name, _) = self.ident()?;
        self.expect(Tok::Is)?;
        let iface = self.interface_body(name, span)?;
        self.end(None, &iface.name.clone())?;
        Ok(iface)
    }

    fn component(&mut self) -> PResult<Interface> {
        let span = self.expect(Tok::Component)?;
        let (name, _) = self.ident()?;
        self.eat(&Tok::Is);
        let iface = self.interface_body(name, span)?;
        self.end(Some(Tok::Component), &iface.name.clone())?;
        Ok(iface)
    }

    fn interface_body(&mut self, name: String, span: Span) -> PResult<Interface> {
        let mut generics = Vec::new();
        if self.eat(&Tok::Generic) {
            self.expect(Tok::LParen)?;
            loop {
                generics.extend(self.generic_group()?);
                if !self.eat(&Tok::Semi) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::Port)?;
        self.expect(Tok::LParen)?;
        let mut ports = Vec::new();
        loop {
            ports.extend(self.port_group()?);
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        let iface = Interface { name, generics, ports, span };
        check_interface(&iface)?;
        Ok(iface)
    }

    fn names(&mut self) -> PResult<Vec<(String, Span)>> {
        let mut names = vec![self.ident()?];
        while self.eat(&Tok::Comma) {
            names.push(self.ident()?);
        }
        Ok(names)
    }

    fn generic_group(&mut self) -> PResult<Vec<Generic>> {
        let names = self.names()?;
        self.expect(Tok::Colon)?;
        let kind = match self.peek() {
            Tok::Real => GenericKind::Real,
            Tok::Complex => GenericKind::Complex,
            Tok::Int => GenericKind::Int,
            _ => return Err(self.unexpected("'real', 'complex' or 'int'")),
        };
        self.bump();
        let default = if self.eat(&Tok::Assign) { Some(self.expr()?) } else { None };
        Ok(names.into_iter().map(|(name, span)| Generic { name, kind, default: default.clone(), span }).collect())
    }

    fn port_group(&mut self) -> PResult<Vec<Port>> {
        let names = self.names()?;
        self.expect(Tok::Colon)?;
        let dir = match self.peek() {
            Tok::In => Direction::In,
            Tok::Out => Direction::Out,
            _ => return Err(self.unexpected("'in' or 'out'")),
        };
        self.bump();
        self.expect(Tok::Fieldmode)?;
        Ok(names.into_iter().map(|(name, span)| Port { name, dir, span }).collect())
    }

    fn architecture(&mut self) -> PResult<Architecture> {
        let span = self.expect(Tok::Architecture)?;
        let (name, _) = self.ident()?;
        self.expect(Tok::Of)?;
        let (entity, _) = self.ident()?;
        self.expect(Tok::Is)?;
        let mut components = Vec::new();
        let mut signals = Vec::new();
        loop {
            match self.peek() {
                Tok::Component => components.push(self.component()?),
                Tok::Signal => {
                    self.bump();
                    let names = self.names()?;
                    self.expect(Tok::Colon)?;
                    self.expect(Tok::Fieldmode)?;
                    self.expect(Tok::Semi)?;
                    signals.extend(names.into_iter().map(|(name, span)| SignalDecl { name, span }));
                }
                Tok::Begin => break,
                _ => return Err(self.unexpected("'component', 'signal' or 'begin'")),
            }
        }
        self.expect(Tok::Begin)?;
        let mut instances = Vec::new();
        let mut assignments = Vec::new();
        while *self.peek() != Tok::End {
            let (first, span) = self.ident()?;
            match self.peek() {
                Tok::Colon => instances.push(self.instance(first, span)?),
                Tok::Le => {
                    self.bump();
                    let (source, _) = self.ident()?;
                    self.expect(Tok::Semi)?;
                    assignments.push(Assignment { target: first, source, span });
                }
                _ => return Err(self.unexpected("':' or '<='")),
            }
        }
        self.end(None, &name)?;
        Ok(Architecture { name, entity, components, signals, instances, assignments, span })
    }

    fn instance(&mut self, name: String, span: Span) -> PResult<Instance> {
        self.expect(Tok::Colon)?;
        let (component, _) = self.ident()?;
        let mut generic_map = Vec::new();
        if self.eat(&Tok::Generic) {
            self.expect(Tok::Map)?;
            generic_map = self.assoc_list(|p| p.expr())?;
        }
        self.expect(Tok::Port)?;
        self.expect(Tok::Map)?;
        let port_map = self.assoc_list(|p| p.ident().map(|(n, _)| n))?;
        self.expect(Tok::Semi)?;
        Ok(Instance { name, component, generic_map, port_map, span })
    }

    fn assoc_list<T>(&mut self, mut actual: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<Assoc<T>>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        loop {
            let (formal, span) = self.ident()?;
            self.expect(Tok::Arrow)?;
            out.push(Assoc { formal, actual: actual(self)?, span });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn expr(&mut self) -> PResult<ParamExpr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ParamExpr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> PResult<ParamExpr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = ParamExpr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> PResult<ParamExpr> {
        if self.eat(&Tok::Minus) {
            return Ok(ParamExpr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<ParamExpr> {
        match self.peek().clone() {
            Tok::Number(x) => {
                self.bump();
                Ok(ParamExpr::Real(x))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(ParamExpr::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let start = self.span();
                let first = self.expr()?;
                if self.eat(&Tok::Comma) {
                    let im_span = self.span();
                    let im = self.expr()?;
                    self.expect(Tok::RParen)?;
                    let re = signed_literal(&first).ok_or_else(|| Diagnostic::new(start, "complex literal parts must be numbers"))?;
                    let im = signed_literal(&im).ok_or_else(|| Diagnostic::new(im_span, "complex literal parts must be numbers"))?;
                    return Ok(ParamExpr::Complex(re, im));
                }
                self.expect(Tok::RParen)?;
                Ok(first)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn signed_literal(e: &ParamExpr) -> Option<f64> {
    match e {
        ParamExpr::Real(x) => Some(*x),
        ParamExpr::Neg(inner) => signed_literal(inner).map(|x| -x),
        _ => None,
    }
}

fn check_interface(iface: &Interface) -> PResult<()> {
    let mut seen = HashSet::new();
    for g in &iface.generics {
        if !seen.insert(&g.name) {
            return Err(Diagnostic::new(g.span, format!("duplicate name '{}' in '{}'", g.name, iface.name)));
        }
    }
    let mut seen_out = false;
    for p in &iface.ports {
        if !seen.insert(&p.name) {
            return Err(Diagnostic::new(p.span, format!("duplicate name '{}' in '{}'", p.name, iface.name)));
        }
        match p.dir {
            Direction::Out => seen_out = true,
            Direction::In if seen_out => {
                return Err(Diagnostic::new(
                    p.span,
                    format!("input port '{}' declared after an output port in '{}'", p.name, iface.name),
                ))
            }
            Direction::In => {}
        }
    }
    Ok(())
}

fn check_design(d: &Design) -> PResult<()> {
    let mut seen = HashSet::new();
    for e in &d.entities {
        if !seen.insert(&e.name) {
            return Err(Diagnostic::new(e.span, format!("entity '{}' declared twice", e.name)));
        }
    }
    let mut seen = HashSet::new();
    for a in &d.architectures {
        if d.entity(&a.entity).is_none() {
            return Err(Diagnostic::new(a.span, format!("architecture '{}' refers to undeclared entity '{}'", a.name, a.entity)));
        }
        if !seen.insert((&a.entity, &a.name)) {
            return Err(Diagnostic::new(a.span, format!("architecture '{}' of '{}' declared twice", a.name, a.entity)));
        }
    }
    Ok(())
}
