//! Polynomial expression parser and renderer.
//!
//! ```text
//! expr   := term (('+'|'-') term)*      -- a leading '-' is allowed
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | ident | '(' expr ')'
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Over `QQ`, an integer literal may be
//! followed by `/ int` so that rendered rational coefficients reparse.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Scalar};
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Arc<GradedRing>) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<GradedRing>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::SyntaxError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate_first = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| AlgebraError::SyntaxError {
                offset: start,
                message: "exponent out of range".to_string(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digit string");
                let mut value = self.ring.field().from_bigint(&n);
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') && self.ring.field() == Field::Rationals {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    let d: BigInt = d.parse().expect("digit string");
                    if d == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    value = Scalar::Rational(alloc::boxed::Box::new(BigRational::new(n, d)));
                } else {
                    self.pos = save;
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let index = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
                Ok(Polynomial::var(self.ring, index))
            }
            Some(_) => Err(self.error("expected integer, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Renders a polynomial in the expression grammar, e.g. `3*x0^2*y - x1 + 5`.
pub fn render(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative_repr();
        let abs = if negative { c.neg() } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_signed_string());
        }
        for (i, name) in ring.names().iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(alloc::format!("{name}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
