//! Polynomial text grammar.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'] factor)*      -- juxtaposition only after a number
//! factor  := '-' factor | atom ['^' uint]
//! atom    := number ['/' number] | ident | '(' expr ')'
//! ```
//! Whitespace is insignificant. Identifiers are ASCII `[A-Za-z_][A-Za-z0-9_]*`.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::MonomialOrder;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::qlinalg::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Syntax { pos: i, message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()) })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    order: MonomialOrder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.vars.len(), self.order);
        let mut sign = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                Rational::one()
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                -Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(&sign, &t);
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // implicit product: `3x`, `3/2(x+y)`
                Some(Tok::Ident(_)) | Some(Tok::LParen)
                    if matches!(self.toks.get(self.pos.wrapping_sub(1)), Some((_, Tok::Num(_)))) =>
                {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e > 0 => e,
                        _ => return self.err("exponent must be a positive integer"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(a);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(b)) if b != BigInt::from(0) => {
                            self.pos += 1;
                            value /= Rational::from_integer(b);
                        }
                        Some(Tok::Num(_)) => return self.err("division by zero"),
                        _ => return self.err("expected integer denominator after `/`"),
                    }
                }
                Ok(Polynomial::constant(n, self.order, value))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(n, self.order, i)),
                    None => Err(Error::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `vars` under `order`.
pub fn poly_parse(text: &str, vars: &[String], order: MonomialOrder) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, message: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), vars, order };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}
