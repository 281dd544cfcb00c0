//! Recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' ['-'|'+'] integer)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. A literal
//! `p/q` is just a division of integer literals.

use fuchsian_core::exactalg::{BigInt, BigRational, Polynomial, RationalFunction};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by the zero function at position {pos}")]
    DivisionByZeroFunction { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<String>,
}

/// Parses with any single identifier as the variable.
pub fn parse_expression(text: &str) -> Result<RationalFunction, ParseError> {
    parse_in(text, None)
}

/// Like [`parse_expression`], also returning the identifier used (if any).
pub fn parse_expression_with_var(text: &str) -> Result<(RationalFunction, Option<String>), ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, var: None };
    let v = p.finish()?;
    Ok((v, p.var))
}

/// Parses, accepting only `var` as an identifier.
pub fn parse_expression_in(text: &str, var: &str) -> Result<RationalFunction, ParseError> {
    parse_in(text, Some(var))
}

fn parse_in(text: &str, var: Option<&str>) -> Result<RationalFunction, ParseError> {
    Parser { src: text.as_bytes(), pos: 0, var: var.map(str::to_string) }.finish()
}

impl Parser<'_> {
    fn finish(&mut self) -> Result<RationalFunction, ParseError> {
        let v = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err(format!("unexpected character {:?}", self.src[self.pos] as char)));
        }
        Ok(v)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).ok_or(ParseError::DivisionByZeroFunction { pos: at })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let digits = self.integer()?;
        let e: i32 = digits.try_into().map_err(|_| self.err("exponent too large"))?;
        if negative {
            if base.is_zero() {
                return Err(ParseError::DivisionByZeroFunction { pos: at });
            }
            Ok(base.pow(-e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn base(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match &self.var {
                    Some(v) if v != name => {
                        self.pos = start;
                        Err(self.err(format!("unknown identifier {name:?} (variable is {v:?})")))
                    }
                    Some(_) => Ok(RationalFunction::x()),
                    None => {
                        self.var = Some(name.to_string());
                        Ok(RationalFunction::x())
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Re-parsable text for a rational function.
pub fn format_expression(f: &RationalFunction, var: &str) -> String {
    f.display_with(var)
}

/// Re-parsable text for a polynomial.
pub fn format_polynomial(p: &Polynomial, var: &str) -> String {
    p.display_with(var)
}
