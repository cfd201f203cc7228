//! Text syntax for polynomials and ideals.
//!
//! ```text
//! ideal   := expr (sep expr)*          sep is ',' or a newline
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*   division only by nonzero constants
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | variable | '(' expr ')'
//! ```
//!
//! Variable names follow `[A-Za-z][A-Za-z0-9_,]*` and are matched against the
//! ring's declared names, longest first. A comma that does not continue a
//! declared name separates generators.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    p.skip_ws(false);
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let f = p.expr()?;
    p.skip_ws(false);
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.peek_char())));
    }
    Ok(f)
}

/// Parses a list of generators separated by commas or newlines. Blank
/// entries are skipped.
pub fn parse_ideal(text: &str, ring: &Ring) -> Result<Vec<Polynomial>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let mut out = Vec::new();
    loop {
        p.skip_ws(true);
        while matches!(p.peek(), Some(b',')) {
            p.pos += 1;
            p.skip_ws(true);
        }
        if p.at_end() {
            break;
        }
        out.push(p.expr()?);
        p.skip_ws(false);
        match p.peek() {
            None => break,
            Some(b',') | Some(b'\n') => p.pos += 1,
            Some(_) => return Err(p.error(&format!("unexpected `{}`", p.peek_char()))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.peek().map(|b| b as char).unwrap_or('\0')
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }

    /// Skips blanks; newlines only when `newlines` is set, since they
    /// separate generators inside an ideal.
    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == b' ' || c == b'\t' || c == b'\r' || (newlines && c == b'\n') {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws(false);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws(false);
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse {
                            position: at,
                            message: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    let field = self.ring.field();
                    acc = acc.scale(&field.inv(&d.terms()[0].1));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        self.skip_ws(false);
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws(false);
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws(false);
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        let e: u32 = digits
            .parse()
            .map_err(|_| Error::Parse { position: at, message: format!("exponent {digits} is too large") })?;
        self.skip_ws(false);
        if self.peek() == Some(b'^') {
            return Err(self.error("chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws(false);
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws(false);
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digits parse as an integer");
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error(&format!("unexpected `{}`", self.peek_char()))),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let mut end = start;
        while let Some(&c) = self.src.get(end) {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b',' {
                end += 1;
            } else {
                break;
            }
        }
        let word = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        // longest declared name that is followed by nothing or a separator comma
        let mut best: Option<usize> = None;
        for (i, name) in self.ring.variables().iter().enumerate() {
            if word.starts_with(name.as_str()) {
                let rest = &word[name.len()..];
                if (rest.is_empty() || rest.starts_with(','))
                    && best.is_none_or(|b| self.ring.variables()[b].len() < name.len())
                {
                    best = Some(i);
                }
            }
        }
        match best {
            Some(i) => {
                self.pos = start + self.ring.variables()[i].len();
                Ok(Polynomial::var(self.ring, i))
            }
            None => {
                let name = word.split(',').next().unwrap_or(word).to_string();
                Err(Error::UnknownVariable { name, position: start })
            }
        }
    }
}
