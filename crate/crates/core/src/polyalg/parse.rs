//! Recursive-descent parser for the expression language:
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := atom ('^' uint)?
//! atom    := int | 't' | identifier | '(' expr ')'
//! ```
//!
//! A rational literal `a/b` is just a quotient of two integer atoms.

use num_bigint::BigInt;

use super::{MultiPoly, RatFn};
use crate::basefield::{BaseField, RatFunc, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax { offset: start, message: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    field: BaseField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        let message = match self.peek() {
            None => format!("{message}, found end of input"),
            Some(t) => format!("{message}, found {t:?}"),
        };
        Err(Error::Syntax { offset: self.offset(), message })
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(Error::Syntax { offset: at, message: "division by zero".into() });
                    }
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Syntax { offset: self.offset(), message: "exponent too large".into() })?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFn> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(RatFn::constant(self.n(), RatFunc::from_rational(Rational::from_integer(v))))
            }
            Some(Tok::Ident(name)) => {
                if name == "t" {
                    if self.field == BaseField::Q {
                        return Err(Error::TInQField);
                    }
                    self.pos += 1;
                    return Ok(RatFn::constant(self.n(), RatFunc::t()));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(RatFn::from_poly(MultiPoly::var(self.n(), i)))
                    }
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses a rational expression in the declared variables.
pub fn parse_ratfn(src: &str, vars: &[String], field: BaseField) -> Result<RatFn> {
    if vars.iter().any(|v| v == "t") {
        return Err(Error::Model("`t` is reserved for the base-field variable".into()));
    }
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len(), vars, field };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("expected an operator");
    }
    Ok(out)
}

/// Parses a polynomial; denominators may only involve `t`.
pub fn parse_poly(src: &str, vars: &[String], field: BaseField) -> Result<MultiPoly> {
    let r = parse_ratfn(src, vars, field)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::NotAPolynomial(src.to_string())),
    }
}

/// Parses a base-field element (no variables).
pub fn parse_base_elem(src: &str, field: BaseField) -> Result<RatFunc> {
    let p = parse_poly(src, &[], field)?;
    Ok(p.as_constant().expect("no variables"))
}

/// Parses a comma-separated list of base-field elements.
pub fn parse_point(src: &str, field: BaseField) -> Result<Vec<RatFunc>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        out.push(parse_base_elem(part, field).map_err(|e| match e {
            Error::Syntax { offset: o, message } => Error::Syntax { offset: offset + o, message },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}
