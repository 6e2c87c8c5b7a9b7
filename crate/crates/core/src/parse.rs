//! Reader for polynomial text.
//!
//! Accepts the canonical output of [`MultiPoly::to_text`] plus a few
//! conveniences: parentheses, unary minus, `^` or `**` powers and division
//! by a nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};
use crate::symbol::{Symbol, SymbolTable};

/// Parses against a fixed table; unknown names are an error.
pub fn parse_poly(text: &str, table: &SymbolTable) -> Result<MultiPoly> {
    let mut resolve = |name: &str| table.lookup(name);
    Parser::new(text, &mut resolve).run()
}

/// Parses and registers any new names.
pub fn parse_poly_interning(text: &str, table: &mut SymbolTable) -> Result<MultiPoly> {
    let mut resolve = |name: &str| table.intern(name);
    Parser::new(text, &mut resolve).run()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    resolve: &'a mut dyn FnMut(&str) -> Result<Symbol>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, resolve: &'a mut dyn FnMut(&str) -> Result<Symbol>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            resolve,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn run(mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected `{}`", self.src[self.pos] as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') if self.src.get(self.pos + 1) != Some(&b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(k) if !k.is_zero() => acc = acc.scale(&k.recip()),
                        Some(_) => {
                            self.pos = at;
                            return self.err("division by zero");
                        }
                        None => {
                            self.pos = at;
                            return self.err("divisor must be a constant");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        let is_pow = match self.peek() {
            Some(b'^') => {
                self.pos += 1;
                true
            }
            Some(b'*') if self.src.get(self.pos + 1) == Some(&b'*') => {
                self.pos += 2;
                true
            }
            _ => false,
        };
        if is_pow {
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .or_else(|_| self.err("exponent too large"))?;
            if e > u16::MAX as u32 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<BigInt>().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(MultiPoly::constant(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let s = (self.resolve)(name).map_err(|e| match e {
                    Error::UnknownSymbol(n) => Error::Parse {
                        pos: start,
                        msg: format!("unknown symbol `{n}`"),
                    },
                    other => other,
                })?;
                Ok(MultiPoly::var(s))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn parses_canonical_and_lenient_forms() {
        let mut t = SymbolTable::new();
        let a = parse_poly_interning("-3/2*x*y^2 + 4", &mut t).unwrap();
        let b = parse_poly_interning("4 - (3*x*y**2)/2", &mut t).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.leading_coefficient(), ratio(-3, 2));
        assert_eq!(a.to_text(&t), "-3/2*x*y^2 + 4");
    }

    #[test]
    fn round_trip() {
        let mut t = SymbolTable::new();
        let a = parse_poly_interning("(lam_u - lam1)^3*(w_uu1 + c) - 7/3", &mut t).unwrap();
        let txt = a.to_text(&t);
        assert_eq!(parse_poly(&txt, &t).unwrap(), a);
    }

    #[test]
    fn errors() {
        let t = SymbolTable::with_names(["x"]).unwrap();
        assert!(matches!(parse_poly("x +", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/x", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/0", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("y", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x", &t), Err(Error::Parse { .. })));
    }
}
