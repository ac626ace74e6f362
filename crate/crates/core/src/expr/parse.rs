//! Infix reader for the catalog and class data files.
//!
//! Grammar: `+ - * / ^`, parentheses, `ln|e|` (also `ln(e)`), `sin`, `cos`,
//! `sqrt`, `atan2(y, x)`, opaque functions registered in the context, and
//! `|p|` for a parameter whose sign has been fixed in the context.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Expr, Symbol};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at {1}")]
    BadChar(char, usize),
    #[error("unexpected end of input in `{0}`")]
    Eof(String),
    #[error("unexpected token `{token}` in `{input}`")]
    Unexpected { token: String, input: String },
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("exponent must be an integer constant, got `{0}`")]
    Exponent(String),
    #[error("`|{0}|` requires a parameter with a fixed sign")]
    Abs(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text).ok_or(ParseError::BadChar(c, start))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),|".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::BadChar(c, i));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = BigInt::from(10u32).pow(frac.len() as u32);
    Some(Rational::new(n, d))
}

/// Name resolution for the reader.
#[derive(Debug, Clone, Default)]
pub struct ParseContext {
    symbols: BTreeMap<String, Symbol>,
    functions: BTreeSet<String>,
    signs: BTreeMap<String, i64>,
}

impl ParseContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_symbol(mut self, s: Symbol) -> Self {
        self.add_symbol(s);
        self
    }

    pub fn add_symbol(&mut self, s: Symbol) {
        self.symbols.insert(s.name().to_string(), s);
    }

    pub fn with_symbols<I: IntoIterator<Item = Symbol>>(mut self, it: I) -> Self {
        for s in it {
            self.add_symbol(s);
        }
        self
    }

    pub fn with_function(mut self, name: &str) -> Self {
        self.functions.insert(name.to_string());
        self
    }

    /// Fixes the sign of parameter `name`, so that `|name|` reads as
    /// `sign·name`.
    pub fn with_sign(mut self, name: &str, sign: i64) -> Self {
        self.signs.insert(name.to_string(), sign);
        self
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn parse(&self, input: &str) -> Result<Expr, ParseError> {
        let toks = lex(input)?;
        let mut p = Parser {
            toks,
            pos: 0,
            ctx: self,
            input,
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.unexpected());
        }
        Ok(e)
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a ParseContext,
    input: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::Unexpected {
                token: format!("{t:?}"),
                input: self.input.to_string(),
            },
            None => ParseError::Eof(self.input.to_string()),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc / self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let ex = self.unary()?;
            let q = ex
                .as_const()
                .filter(|q| q.is_integer())
                .ok_or_else(|| ParseError::Exponent(ex.to_string()))?;
            let n: i64 = q
                .to_integer()
                .try_into()
                .map_err(|_| ParseError::Exponent(ex.to_string()))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn one_arg(&mut self) -> Result<Expr, ParseError> {
        let mut a = self.args()?;
        if a.len() != 1 {
            return Err(self.unexpected());
        }
        Ok(a.pop().unwrap())
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek().cloned().ok_or_else(|| self.unexpected())?;
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(Expr::constant(q)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op('|') => {
                let inner = self.expr()?;
                self.expect('|')?;
                self.abs_of(&inner)
            }
            Tok::Ident(name) => self.ident(&name),
            _ => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }

    fn abs_of(&self, inner: &Expr) -> Result<Expr, ParseError> {
        if let Some(q) = inner.as_const() {
            return Ok(Expr::constant(if q < &Rational::zero() {
                -q.clone()
            } else {
                q.clone()
            }));
        }
        let s = inner
            .as_symbol()
            .ok_or_else(|| ParseError::Abs(inner.to_string()))?;
        let sign = self
            .ctx
            .signs
            .get(s.name())
            .ok_or_else(|| ParseError::Abs(s.name().to_string()))?;
        Ok(inner * Expr::int(*sign))
    }

    fn ident(&mut self, name: &str) -> Result<Expr, ParseError> {
        match name {
            "ln" => {
                if self.eat('|') {
                    let inner = self.expr()?;
                    self.expect('|')?;
                    Ok(inner.ln_abs())
                } else {
                    Ok(self.one_arg()?.ln_abs())
                }
            }
            "sin" => Ok(self.one_arg()?.sin()),
            "cos" => Ok(self.one_arg()?.cos()),
            "sqrt" => Ok(self.one_arg()?.sqrt()),
            "atan2" => {
                let a = self.args()?;
                if a.len() != 2 {
                    return Err(self.unexpected());
                }
                Ok(Expr::atan2(&a[0], &a[1]))
            }
            _ if self.ctx.functions.contains(name) => {
                let arg = self.one_arg()?;
                Ok(Expr::func(name, 0, &arg))
            }
            _ => self
                .ctx
                .symbols
                .get(name)
                .map(|s| s.to_expr())
                .ok_or_else(|| ParseError::Unknown(name.to_string())),
        }
    }
}
