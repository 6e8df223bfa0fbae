//! Deferred numeric parameter expressions (generic-map right-hand sides).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Arithmetic over literals and named parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamExpr {
    Real(f64),
    Complex(f64, f64),
    Var(String),
    Neg(Box<ParamExpr>),
    Bin(BinOp, Box<ParamExpr>, Box<ParamExpr>),
}

pub type ParamEnv = BTreeMap<String, Complex64>;

impl ParamExpr {
    pub fn bin(op: BinOp, a: ParamExpr, b: ParamExpr) -> Self {
        Self::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn eval(&self, env: &ParamEnv) -> Result<Complex64> {
        Ok(match self {
            Self::Real(x) => Complex64::new(*x, 0.0),
            Self::Complex(re, im) => Complex64::new(*re, *im),
            Self::Var(name) => *env.get(name).ok_or_else(|| Error::UnboundParameter(name.clone()))?,
            Self::Neg(e) => -e.eval(env)?,
            Self::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == Complex64::new(0.0, 0.0) {
                            return Err(Error::DivisionByZero);
                        }
                        a / b
                    }
                }
            }
        })
    }

    /// Names referenced by the expression, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Self::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Self::Neg(e) => e.collect_vars(out),
            Self::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Self::Real(_) | Self::Complex(..) => {}
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Self::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Self::Bin(..) => 2,
            Self::Neg(_) => 3,
            _ => 4,
        }
    }
}

fn fmt_num(x: f64) -> String {
    // `{:?}` keeps the shortest round-tripping representation and a decimal point
    format!("{x:?}")
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Real(x) => write!(f, "{}", fmt_num(*x)),
            Self::Complex(re, im) => write!(f, "({}, {})", fmt_num(*re), fmt_num(*im)),
            Self::Var(v) => write!(f, "{v}"),
            Self::Neg(e) => {
                if e.precedence() < 4 {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Self::Bin(op, a, b) => {
                let p = self.precedence();
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                if a.precedence() < p {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {sym} ")?;
                // right operand binds tighter for left-associative operators
                if b.precedence() <= p {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}
