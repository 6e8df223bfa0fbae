//! Tokenizer: VHDL lexis, case-insensitive identifiers and `--` comments.

use std::fmt;

use crate::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Entity,
    Architecture,
    Component,
    Signal,
    Port,
    Generic,
    Map,
    Begin,
    End,
    Of,
    Is,
    In,
    Out,
    Fieldmode,
    Real,
    Complex,
    Int,
    /// Lowercased identifier.
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Arrow,
    Assign,
    Le,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier '{name}'"),
            Tok::Number(x) => return write!(f, "number {x}"),
            Tok::Entity => "'entity'",
            Tok::Architecture => "'architecture'",
            Tok::Component => "'component'",
            Tok::Signal => "'signal'",
            Tok::Port => "'port'",
            Tok::Generic => "'generic'",
            Tok::Map => "'map'",
            Tok::Begin => "'begin'",
            Tok::End => "'end'",
            Tok::Of => "'of'",
            Tok::Is => "'is'",
            Tok::In => "'in'",
            Tok::Out => "'out'",
            Tok::Fieldmode => "'fieldmode'",
            Tok::Real => "'real'",
            Tok::Complex => "'complex'",
            Tok::Int => "'int'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Semi => "';'",
            Tok::Colon => "':'",
            Tok::Comma => "','",
            Tok::Arrow => "'=>'",
            Tok::Assign => "':='",
            Tok::Le => "'<='",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Eof => "end of file",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "entity" => Tok::Entity,
        "architecture" => Tok::Architecture,
        "component" => Tok::Component,
        "signal" => Tok::Signal,
        "port" => Tok::Port,
        "generic" => Tok::Generic,
        "map" => Tok::Map,
        "begin" => Tok::Begin,
        "end" => Tok::End,
        "of" => Tok::Of,
        "is" => Tok::Is,
        "in" => Tok::In,
        "out" => Tok::Out,
        "fieldmode" => Tok::Fieldmode,
        "real" => Tok::Real,
        "complex" => Tok::Complex,
        "int" => Tok::Int,
        _ => return None,
    })
}

pub fn is_keyword(word: &str) -> bool {
    keyword(&word.to_ascii_lowercase()).is_some()
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.col)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor { chars: source.chars().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let span = cur.span();
        if c.is_ascii_whitespace() {
            cur.bump();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(c) = cur.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                word.push(c.to_ascii_lowercase());
                cur.bump();
            }
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token { tok, span });
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            out.push(Token { tok: Tok::Number(number(&mut cur, span)?), span });
            continue;
        }
        cur.bump();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '-' if cur.peek() == Some('-') => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                continue;
            }
            '-' => Tok::Minus,
            ':' if cur.peek() == Some('=') => {
                cur.bump();
                Tok::Assign
            }
            ':' => Tok::Colon,
            '=' if cur.peek() == Some('>') => {
                cur.bump();
                Tok::Arrow
            }
            '<' if cur.peek() == Some('=') => {
                cur.bump();
                Tok::Le
            }
            other => return Err(Diagnostic::new(span, format!("unexpected character '{other}'"))),
        };
        out.push(Token { tok, span });
    }
    out.push(Token { tok: Tok::Eof, span: cur.span() });
    Ok(out)
}

fn number(cur: &mut Cursor, span: Span) -> Result<f64, Diagnostic> {
    let mut text = String::new();
    let digits = |cur: &mut Cursor, text: &mut String| {
        let mut any = false;
        while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
            text.push(d);
            cur.bump();
            any = true;
        }
        any
    };
    let mut any = digits(cur, &mut text);
    if cur.peek() == Some('.') {
        text.push('.');
        cur.bump();
        any |= digits(cur, &mut text);
    }
    if !any {
        return Err(Diagnostic::new(span, "malformed number"));
    }
    if matches!(cur.peek(), Some('e' | 'E')) {
        text.push('e');
        cur.bump();
        if let Some(s) = cur.peek().filter(|c| *c == '+' || *c == '-') {
            text.push(s);
            cur.bump();
        }
        if !digits(cur, &mut text) {
            return Err(Diagnostic::new(span, "malformed number: missing exponent digits"));
        }
    }
    if cur.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
        return Err(Diagnostic::new(cur.span(), "malformed number: unexpected letter"));
    }
    text.parse().map_err(|_| Diagnostic::new(span, "malformed number"))
}
