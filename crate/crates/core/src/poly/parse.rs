//! Recursive-descent reader for polynomial text.
//!
//! ```text
//! expr   := '-'? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' natural)?
//! base   := natural | var | '(' expr ')'
//! var    := 'x' | 'y' | 'z' | 'w' | 'x' natural
//! ```
//!
//! Whitespace is ignored. The letters `x, y, z, w` name the variables when
//! there are at most four of them; `x1 .. xn` (1-based) always works.

use super::{check_nvars, SparsePoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;

pub fn parse_poly(text: &str, nvars: usize, field: PrimeField) -> Result<SparsePoly> {
    check_nvars(nvars)?;
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let f = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.src[parser.pos] as char)));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: PrimeField,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn expr(&mut self) -> Result<SparsePoly> {
        let negate = if self.peek() == Some(b'-') {
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
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_digit() || c == b'(' || c.is_ascii_alphabetic()
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(c) if Self::starts_factor(c) => acc = acc.mul(&self.factor()?)?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a natural exponent after `^`"));
            }
            let e: u64 = digits
                .parse()
                .ok()
                .filter(|&e| e <= u32::MAX as u64)
                .ok_or_else(|| Error::ExponentOverflow(format!("exponent {digits} at byte {start}")))?;
            return base.pow(e);
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

    fn base(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self
                    .digits()
                    .bytes()
                    .fold(0u32, |acc, d| {
                        self.field
                            .add(self.field.mul(acc, 10 % self.field.modulus()), self.field.reduce((d - b'0') as u64))
                    });
                Ok(SparsePoly::constant(self.field, self.nvars, value as u64))
            }
            Some(c) if c.is_ascii_alphabetic() => self.var(),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn var(&mut self) -> Result<SparsePoly> {
        let start = self.pos;
        let letter = self.src[self.pos];
        self.pos += 1;
        let nvars = self.nvars;
        let unknown = |name: String| Error::UnknownVariable {
            name,
            pos: start,
            nvars,
        };
        if letter == b'x' && self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            let digits = self.digits();
            let name = format!("x{digits}");
            let index: usize = digits.parse().map_err(|_| unknown(name.clone()))?;
            if index == 0 || index > self.nvars {
                return Err(unknown(name));
            }
            return Ok(SparsePoly::var(self.field, self.nvars, index - 1));
        }
        let index = match letter {
            b'x' => 0,
            b'y' => 1,
            b'z' => 2,
            b'w' => 3,
            other => return Err(unknown((other as char).to_string())),
        };
        if self.nvars > 4 || index >= self.nvars {
            return Err(unknown((letter as char).to_string()));
        }
        Ok(SparsePoly::var(self.field, self.nvars, index))
    }
}
