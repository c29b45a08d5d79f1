//! Polynomial strings: integer and rational literals, `x1..xn`, `+ - * ^`
//! and parentheses. A `/` is only legal inside a literal such as `3/4`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(input: &str, pos: usize, msg: impl Into<String>) -> Error {
    Error::PolyParse { input: input.to_string(), pos, msg: msg.into() }
}

fn lex(s: &str, nvars: usize) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' => {
                i += 1;
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let name = &s[start..i];
                let idx: usize = s[ds..i].parse().map_err(|_| err(s, start, format!("bad variable '{}'", name)))?;
                if idx == 0 || idx > nvars {
                    return Err(err(s, start, format!("unknown variable '{}' (chart has {} coordinates)", name, nvars)));
                }
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            d if d.is_ascii_digit() => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = s[start..i].parse().expect("digits");
                let mut val = BigRational::from_integer(num);
                if i < b.len() && b[i] == b'/' {
                    let ds = i + 1;
                    let mut j = ds;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == ds {
                        return Err(err(s, i, "expected denominator after '/'"));
                    }
                    let den: BigInt = s[ds..j].parse().expect("digits");
                    if den.is_zero() {
                        return Err(err(s, ds, "zero denominator"));
                    }
                    val /= BigRational::from_integer(den);
                    i = j;
                }
                out.push((start, Tok::Num(val)));
                continue;
            }
            _ => {
                let tokend = s[start..].find(|ch: char| ch.is_whitespace() || "+-*^()".contains(ch)).map_or(s.len(), |k| start + k);
                return Err(err(s, start, format!("unexpected token '{}'", &s[start..tokend.max(start + 1)])));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.0)
    }

    fn expr(&mut self) -> Result<Polynomial<BigRational>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<BigRational>> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<BigRational>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.toks.get(self.pos).map(|t| t.1.clone()) {
                Some(Tok::Num(k)) if k.is_integer() => {
                    self.pos += 1;
                    let k: u32 = k.to_integer().try_into().map_err(|_| err(self.src, at, "exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(err(self.src, at, "exponent must be a non-negative integer literal")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<BigRational>> {
        let at = self.here();
        match self.toks.get(self.pos).map(|t| t.1.clone()) {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, v))
            }
            Some(Tok::Var(j)) => {
                self.pos += 1;
                Polynomial::var(self.nvars, j)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.src, self.here(), "expected ')'")),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(t) => Err(err(self.src, at, format!("unexpected {:?}", t))),
            None => Err(err(self.src, at, "unexpected end of input")),
        }
    }
}

/// Parse a polynomial in `nvars` coordinates with exact rational
/// coefficients.
pub fn parse_poly(s: &str, nvars: usize) -> Result<Polynomial<BigRational>> {
    let toks = lex(s, nvars)?;
    if toks.is_empty() {
        return Err(err(s, 0, "empty polynomial"));
    }
    let mut p = Parser { src: s, toks, pos: 0, nvars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(s, p.here(), "trailing input"));
    }
    Ok(out)
}

/// Parse a bare rational literal like `-3/4`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let p = parse_poly(s, 0)?;
    p.as_constant().ok_or_else(|| err(s, 0, "not a constant"))
}
