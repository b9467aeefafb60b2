//! Text form of polynomials.
//!
//! Input: terms joined by `+`/`-`; a term is a `*`-separated product of factors,
//! each either a rational literal (`7`, `3/2`) or a variable power `x<i>^<e>`
//! (`y<i>` is accepted as an alias). Whitespace is insignificant. When `n == 1`
//! a bare `x` stands for `x1`.
//!
//! Output: terms in descending degrevlex order, coefficients in lowest terms,
//! variables always written `x<i>`.

use std::str::FromStr;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

pub fn parse_polynomial<F: Field>(text: &str, n: usize) -> Result<Polynomial<F>> {
    Parser { src: text.as_bytes(), pos: 0, n }.polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    fn polynomial<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{}`", c as char)),
            };
            first = false;
            let (m, c) = self.term::<F>()?;
            terms.push((m, if sign { c.neg_ref() } else { c }));
        }
        Ok(Polynomial::from_terms(self.n, terms))
    }

    fn term<F: Field>(&mut self) -> Result<(Monomial, F)> {
        let mut coeff = F::one();
        let mut exps = vec![0u32; self.n];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff = coeff.mul_ref(&self.number::<F>()?),
                Some(b'x') | Some(b'y') => {
                    let (i, e) = self.variable()?;
                    exps[i] += e;
                }
                Some(c) => return self.err(format!("expected a factor, found `{}`", c as char)),
                None => return self.err("expected a factor, found end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn number<F: Field>(&mut self) -> Result<F> {
        let start = self.pos;
        let num = self.digits().unwrap().to_owned();
        let mut text = num;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            match self.digits() {
                Some(d) => {
                    if d.bytes().all(|b| b == b'0') {
                        return Err(Error::Parse { pos: start, msg: "zero denominator".into() });
                    }
                    text = format!("{text}/{d}");
                }
                None => return self.err("expected denominator after `/`"),
            }
        }
        F::from_str(&text).map_err(|_| Error::Parse { pos: start, msg: format!("bad number `{text}`") })
    }

    fn variable(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        let n = self.n;
        self.pos += 1;
        let idx = match self.digits() {
            Some(d) => usize::from_str(d).map_err(|_| Error::Parse { pos: start, msg: "bad variable index".into() })?,
            None if n == 1 => 1,
            None => return Err(Error::Parse { pos: start, msg: "variable needs an index".into() }),
        };
        if idx == 0 || idx > self.n {
            return Err(Error::VariableOutOfRange { index: idx, n: self.n });
        }
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            e = match self.digits() {
                Some(d) => u32::from_str(d).map_err(|_| Error::Parse { pos: self.pos, msg: "exponent too large".into() })?,
                None => return self.err("expected exponent after `^`"),
            };
        }
        Ok((idx - 1, e))
    }
}

pub fn format_polynomial<F: Field>(f: &Polynomial<F>) -> String {
    if f.is_zero() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let neg = *c < F::zero();
        let abs = if neg { c.neg_ref() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format!("{abs}*{m}"));
        }
    }
    out
}
