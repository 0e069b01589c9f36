//! Small infix grammar for polynomials: `x^2+y^3`, `2*x*y - 1/2`, `(x+y)^2`.
//!
//! Literals are integers or rationals `p/q`; there is no division operator.
//! Variables are `x`, `y`, `z` (first three) or `x1`..`xn` (1-indexed).
//! Juxtaposition multiplies, so `3xy^2` is accepted.

use super::mpoly::MPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str, nvars: usize) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |msg: String| Error::Parse(msg);
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(err(format!("missing denominator at offset {ds}")));
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                toks.push(Tok::Num(lit.parse()?));
            }
            'x' | 'y' | 'z' => {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let idx = if ds == i {
                    match c {
                        'x' => 0,
                        'y' => 1,
                        _ => 2,
                    }
                } else if c == 'x' {
                    let k: usize = chars[ds..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err("bad variable index".into()))?;
                    if k == 0 {
                        return Err(err("variables are numbered from x1".into()));
                    }
                    k - 1
                } else {
                    return Err(err(format!("unknown variable at offset {}", ds - 1)));
                };
                if idx >= nvars {
                    return Err(err(format!(
                        "variable `{}` out of range for {nvars} variable(s)",
                        chars[ds - 1..i].iter().collect::<String>()
                    )));
                }
                toks.push(Tok::Var(idx));
            }
            other => return Err(err(format!("unexpected character `{other}` at offset {i}"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
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
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = match self.next() {
            Some(Tok::Num(r)) => MPoly::constant(self.nvars, r),
            Some(Tok::Var(i)) => MPoly::var(self.nvars, i),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => {
                    let e = e
                        .to_i64()
                        .filter(|&e| (0..=1000).contains(&e))
                        .ok_or_else(|| {
                            Error::Parse("exponent must be a small non-negative integer".into())
                        })?;
                    return Ok(base.pow(e as u32));
                }
                _ => return Err(Error::Parse("expected exponent after `^`".into())),
            }
        }
        Ok(base)
    }
}

pub fn parse_polynomial(src: &str, nvars: usize) -> Result<MPoly> {
    if nvars == 0 {
        return Err(Error::InvalidInput(
            "at least one variable is required".into(),
        ));
    }
    let toks = lex(src, nvars)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
