//! The ideal text format: `x1^3, x2^6`, with `1` for the unit ideal and `0` for zero.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }
}

/// Parses a single monomial such as `x1^2*x3` or `1`.
pub fn parse_monomial(text: &str, dim: usize) -> Result<ExponentVector> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let m = monomial(&mut cur, dim)?;
    cur.skip_ws();
    if cur.pos != cur.src.len() {
        return Err(cur.error("unexpected trailing input after monomial"));
    }
    m.ok_or_else(|| cur.error("the zero monomial is not allowed here"))
}

/// Returns `None` for the literal `0`.
fn monomial(cur: &mut Cursor<'_>, dim: usize) -> Result<Option<ExponentVector>> {
    cur.skip_ws();
    let mut coords = vec![BigUint::zero(); dim];
    match cur.peek() {
        Some(b'0'..=b'9') => {
            let n = cur.number()?;
            if n.is_zero() {
                return Ok(None);
            }
            if n != BigUint::from(1u32) {
                return Err(cur.error("only the constants 0 and 1 may appear as monomials"));
            }
            return Ok(Some(ExponentVector::new(coords)));
        }
        Some(b'x') => {}
        _ => return Err(cur.error("expected a monomial `x<i>^<n>`, `1`, or `0`")),
    }
    loop {
        cur.skip_ws();
        if cur.peek() != Some(b'x') {
            return Err(cur.error("expected a variable `x<i>`"));
        }
        cur.pos += 1;
        let index = cur.number()?;
        let i: usize = match usize::try_from(&index) {
            Ok(i) if (1..=dim).contains(&i) => i,
            _ => return Err(cur.error(format!("variable index {index} outside 1..={dim}"))),
        };
        cur.skip_ws();
        let exp = if cur.peek() == Some(b'^') {
            cur.pos += 1;
            cur.skip_ws();
            cur.number()?
        } else {
            BigUint::from(1u32)
        };
        coords[i - 1] += exp;
        cur.skip_ws();
        match cur.peek() {
            Some(b'*') => {
                cur.pos += 1;
            }
            Some(b'x') => {}
            _ => break,
        }
    }
    Ok(Some(ExponentVector::new(coords)))
}

/// Parses a comma-separated generator list in `dim` variables.
pub fn parse_ideal(text: &str, dim: usize) -> Result<MonomialIdeal> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut gens = Vec::new();
    loop {
        if let Some(m) = monomial(&mut cur, dim)? {
            gens.push(m);
        }
        cur.skip_ws();
        match cur.peek() {
            Some(b',') => cur.pos += 1,
            None => break,
            Some(_) => return Err(cur.error("expected `,` or end of ideal")),
        }
    }
    MonomialIdeal::minimalize(dim, gens)
}
