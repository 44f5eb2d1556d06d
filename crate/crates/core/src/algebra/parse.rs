//! Text form of polynomials.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := var ('^' nat)? | '0' | '1'
//! var    := 'tau' | [a-z]+ nat
//! ```
//!
//! Whitespace is ignored. Variables must belong to the ring.

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;
use super::ring::Ring;
use super::AlgebraError;

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial, AlgebraError> {
    Parser { text, bytes: text.as_bytes(), pos: 0, ring }.poly()
}

/// Canonical text: terms in descending monomial order, variables in roster
/// order inside each term. The zero polynomial prints as `0`.
pub fn format_poly(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let mut out = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        out.push_str(&format_monomial(ring, t));
    }
    out
}

pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut factors = Vec::new();
    for (var, v) in ring.variables().iter().enumerate() {
        match m.exponent(ring.slot(var)) {
            0 => {}
            1 => factors.push(v.name().to_string()),
            e => factors.push(format!("{}^{e}", v.name())),
        }
    }
    factors.join("*")
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax { position: self.pos, message: message.into() }
    }

    fn poly(mut self) -> Result<Polynomial, AlgebraError> {
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let mut terms = Vec::new();
        loop {
            if let Some(t) = self.term()? {
                terms.push(t);
            }
            match self.peek() {
                Some(b'+') => self.pos += 1,
                None => break,
                Some(c) => return Err(self.error(format!("unexpected '{}'", c as char))),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    /// `None` when the term contains the factor `0`.
    fn term(&mut self) -> Result<Option<Monomial>, AlgebraError> {
        let mut exps = [0u16; MAX_VARS];
        let mut zero = false;
        loop {
            match self.factor()? {
                Some((slot, e)) => {
                    exps[slot] = exps[slot].checked_add(e).ok_or_else(|| self.error("exponent overflow"))?;
                }
                None => zero = true,
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((!zero).then(|| Monomial::from_slots(exps, self.ring.weights())))
    }

    /// `Some((slot, exponent))`, with exponent 0 for the literal `1`, or `None` for `0`.
    fn factor(&mut self) -> Result<Option<(usize, u16)>, AlgebraError> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                return Ok(None);
            }
            Some(b'1') if !self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                self.pos += 1;
                return Ok(Some((0, 0)));
            }
            Some(c) if c.is_ascii_lowercase() => {}
            Some(c) => return Err(self.error(format!("expected a variable, found '{}'", c as char))),
            None => return Err(self.error("expected a variable, found end of input")),
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        let var = self.ring.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
            name: name.to_string(),
            ring: self.ring.name().to_string(),
            position: Some(start),
        })?;
        let mut exp = 1u16;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if digits == self.pos {
                return Err(self.error("expected an exponent"));
            }
            exp = self.text[digits..self.pos].parse().map_err(|_| self.error("exponent out of range"))?;
        }
        Ok(Some((self.ring.slot(var), exp)))
    }
}
