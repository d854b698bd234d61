//! Text syntax for elements.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := 'E'idx | 'F'idx | 'K'idx | 'B'idx | 'q' | 'v' | int
//!         | '[' int ']' ('_' idx)? | '(' expr ')'
//! ```
//!
//! Indices are 1-based. Division is only by scalars.

use super::free::{kvec_neg, kvec_unit, FreeElement, GenSymbol};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, MAX_RANK};
use crate::scalar::{q_int, Scalar};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    rd: Option<&'a RootDatum>,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

/// The scalar value of an element with only a constant term.
fn as_scalar(x: &FreeElement) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let mut it = x.terms();
    let (w, c) = it.next()?;
    if it.next().is_some() || !w.is_empty() {
        return None;
    }
    Some(c.clone())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| err(start, "integer too large"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        if self.eat(b'-') {
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn node(&mut self) -> Result<usize> {
        let at = self.pos;
        let i = self.int()?;
        let rank = self.rd.map(|r| r.rank()).unwrap_or(MAX_RANK);
        if i < 1 || i as usize > rank {
            return err(at, format!("node {i} out of range 1..={rank}"));
        }
        Ok(i as usize - 1)
    }

    fn expr(&mut self) -> Result<FreeElement> {
        let mut acc = if self.eat(b'-') {
            self.term()?.scale(&Scalar::from_int(-1))
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                let Some(c) = as_scalar(&d) else {
                    return err(at, "division by a non-scalar");
                };
                let inv = c.inverse().or_else(|_| err(at, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<FreeElement> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let n = self.signed_int()?;
        if n >= 0 {
            return Ok(base.pow(n as u32));
        }
        if let Some(c) = as_scalar(&base) {
            let p = c.pow(n as i32).or_else(|_| err(at, "negative power of zero"))?;
            return Ok(FreeElement::scalar(p));
        }
        let mut terms = base.terms();
        if let (Some((w, c)), None) = (terms.next(), terms.next()) {
            if w.len() == 1 && c.is_one() {
                if let GenSymbol::K(k) = w[0] {
                    let mut r = FreeElement::one();
                    let inv = FreeElement::k(kvec_neg(&k));
                    for _ in 0..(-n) {
                        r = r.mul(&inv);
                    }
                    return Ok(r);
                }
            }
        }
        err(at, "negative powers are only defined for K and scalars")
    }

    fn atom(&mut self) -> Result<FreeElement> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'E') => {
                self.pos += 1;
                Ok(FreeElement::e(self.node()?))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(FreeElement::f(self.node()?))
            }
            Some(b'K') => {
                self.pos += 1;
                Ok(FreeElement::k(kvec_unit(self.node()?, 1)))
            }
            Some(b'B') => {
                self.pos += 1;
                Ok(FreeElement::b(self.node()?))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(FreeElement::scalar(Scalar::q_pow(1)))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(FreeElement::scalar(Scalar::v_pow(1)))
            }
            Some(c) if c.is_ascii_digit() => Ok(FreeElement::scalar(Scalar::from_int(self.int()?))),
            Some(b'[') => {
                self.pos += 1;
                let n = self.signed_int()?;
                self.expect(b']')?;
                let d = if self.peek() == Some(b'_') {
                    self.pos += 1;
                    let i = self.node()?;
                    self.rd.map(|r| r.d(i)).unwrap_or(1)
                } else {
                    1
                };
                Ok(FreeElement::scalar(q_int(n, d)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) => err(at, format!("unexpected '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parse an expression; node indices are checked against `rd` when given.
pub fn parse_expression(text: &str, rd: Option<&RootDatum>) -> Result<FreeElement> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        rd,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return err(p.pos, format!("unexpected '{}'", p.s[p.pos] as char));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unclosed_paren_offset() {
        match parse_expression("E1*(F1", None) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scalar_atoms() {
        let x = parse_expression("q*[2]_1", None).unwrap();
        assert_eq!(x.to_string(), "q^2 + 1");
        let y = parse_expression("(K1 - K1^-1)/(q - q^-1)", None).unwrap();
        assert_eq!(y.len(), 2);
    }

    #[test]
    fn node_range_checked() {
        let rd = RootDatum::new('A', 2).unwrap();
        assert!(parse_expression("E3", Some(&rd)).is_err());
    }
}
