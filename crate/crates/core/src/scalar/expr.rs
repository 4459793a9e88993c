//! Recursive-descent parser for the scalar-expression mini-language.
//!
//! Grammar:
//! ```text
//!   expr   := term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*
//!   factor := atom ('^' integer)?
//!   atom   := integer | 'i' | identifier | '(' expr ')' | '-' atom
//! ```
//! Whitespace between tokens is ignored. Identifiers must belong to the
//! declared parameter set; `^` only accepts a non-negative integer literal.

use super::gaussian::GaussianRational;
use super::ratfunc::{Scalar, ScalarError};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("exponent at byte {pos} must be a non-negative integer literal")]
    BadExponent { pos: usize },
    #[error(transparent)]
    Arith(#[from] ScalarError),
}

/// Abstract syntax of a scalar expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarExpr {
    Int(BigInt),
    ImagUnit,
    Param(String),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, u32),
}

impl ScalarExpr {
    /// Evaluates the AST into an exact rational function.
    pub fn to_scalar(&self) -> Result<Scalar, ScalarError> {
        match self {
            ScalarExpr::Int(n) => Ok(Scalar::constant(GaussianRational::from_bigint(n.clone()))),
            ScalarExpr::ImagUnit => Ok(Scalar::i()),
            ScalarExpr::Param(name) => Ok(Scalar::param(name)),
            ScalarExpr::Neg(e) => Ok(-&e.to_scalar()?),
            ScalarExpr::Add(a, b) => Ok(&a.to_scalar()? + &b.to_scalar()?),
            ScalarExpr::Sub(a, b) => Ok(&a.to_scalar()? - &b.to_scalar()?),
            ScalarExpr::Mul(a, b) => Ok(&a.to_scalar()? * &b.to_scalar()?),
            ScalarExpr::Div(a, b) => &a.to_scalar()? / &b.to_scalar()?,
            ScalarExpr::Pow(a, e) => Ok(a.to_scalar()?.pow_u32(*e)),
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parenthesizes every compound subexpression; ugly but re-parseable.
        match self {
            ScalarExpr::Int(n) => write!(f, "{n}"),
            ScalarExpr::ImagUnit => write!(f, "i"),
            ScalarExpr::Param(p) => write!(f, "{p}"),
            ScalarExpr::Neg(e) => write!(f, "-({e})"),
            ScalarExpr::Add(a, b) => write!(f, "({a}+{b})"),
            ScalarExpr::Sub(a, b) => write!(f, "({a}-{b})"),
            ScalarExpr::Mul(a, b) => write!(f, "({a}*{b})"),
            ScalarExpr::Div(a, b) => write!(f, "({a}/{b})"),
            ScalarExpr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn parse_expr(&mut self) -> Result<ScalarExpr, ExprError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = ScalarExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ScalarExpr, ExprError> {
        let mut lhs = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    lhs = ScalarExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<ScalarExpr, ExprError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.peek() == Some(b'-') {
                return Err(ExprError::BadExponent { pos: start });
            }
            let digits = self.take_digits();
            if digits.is_empty() {
                return Err(ExprError::BadExponent { pos: start });
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| ExprError::BadExponent { pos: start })?;
            return Ok(ScalarExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse_atom(&mut self) -> Result<ScalarExpr, ExprError> {
        match self.peek() {
            None => self.syntax("unexpected end of input"),
            Some(b'-') => {
                self.pos += 1;
                let inner = self.parse_atom()?;
                Ok(ScalarExpr::Neg(Box::new(inner)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_digits();
                Ok(ScalarExpr::Int(digits.parse().expect("digit string")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if name == "i" {
                    return Ok(ScalarExpr::ImagUnit);
                }
                if !self.params.contains(&name) {
                    return Err(ExprError::UnknownIdentifier { pos: start, name });
                }
                Ok(ScalarExpr::Param(name))
            }
            Some(c) => self.syntax(format!("unexpected character `{}`", c as char)),
        }
    }
}

/// Parses `text` over the declared parameter set.
pub fn parse_expr(text: &str, params: &BTreeSet<String>) -> Result<ScalarExpr, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        params,
    };
    let expr = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.syntax("trailing input");
    }
    Ok(expr)
}

/// Convenience: parse and evaluate to a `Scalar` in one step.
pub fn parse_scalar(text: &str, params: &BTreeSet<String>) -> Result<Scalar, ExprError> {
    Ok(parse_expr(text, params)?.to_scalar()?)
}

pub fn param_set<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> BTreeSet<String> {
    names.into_iter().map(|s| s.as_ref().to_string()).collect()
}
