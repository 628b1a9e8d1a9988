//! Text grammar for forms:
//!
//! ```text
//! sum    := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' int)?
//! atom   := number | 'x' int | '(' sum ')'
//! ```
//! Numbers are integers or decimals and are read exactly; `/` divides by a constant.

use super::form::Form;
use super::poly::Poly;
use super::scalar::{Rat, Scalar};
use super::ParseError;
use num_bigint::BigInt;
use num_traits::Pow;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    start: usize,
    end: usize,
}

fn err(message: impl Into<String>, start: usize, end: usize) -> ParseError {
    ParseError { message: message.into(), start, end }
}

fn lex(src: &str, nvars: usize) -> Result<Vec<Lexed>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            out.push(Lexed { tok, start, end: i });
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &src[start..i];
            let mut frac = "";
            if i < b.len() && b[i] == b'.' {
                i += 1;
                let fs = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                frac = &src[fs..i];
            }
            if int_part.is_empty() && frac.is_empty() {
                return Err(err("malformed number", start, i));
            }
            let digits = format!("{int_part}{frac}");
            let n: BigInt = digits.parse().map_err(|_| err("malformed number", start, i))?;
            let d = BigInt::from(10u32).pow(frac.len() as u32);
            out.push(Lexed { tok: Tok::Num(Rat::new(n, d)), start, end: i });
            continue;
        }
        if c == b'x' {
            i += 1;
            let ds = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if ds == i {
                return Err(err("variable name needs an index, e.g. x0", start, i));
            }
            let idx: usize = src[ds..i].parse().map_err(|_| err("bad variable index", start, i))?;
            if idx >= nvars {
                return Err(err(format!("variable x{idx} out of range (expected x0..x{})", nvars - 1), start, i));
            }
            out.push(Lexed { tok: Tok::Var(idx), start, end: i });
            continue;
        }
        let ch = src[i..].chars().next().unwrap();
        return Err(err(format!("unexpected character '{ch}'"), start, start + ch.len_utf8()));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    nvars: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|l| l.start).unwrap_or(self.len)
    }

    fn last_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].end
        }
    }

    /// Returns the summands with their spans; signs are folded into the summand.
    fn sum(&mut self) -> Result<Vec<(Poly<Rat>, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let start = self.here();
            let mut neg = false;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    neg = true;
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            let t = self.term()?;
            let t = if neg { t.neg() } else { t };
            out.push((t, start, self.last_end()));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly<Rat>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let s = self.here();
                    let f = self.factor()?;
                    let e = self.last_end();
                    if f.degree() != Some(0) {
                        return Err(err("division by a non-constant or zero", s, e));
                    }
                    let c = f.coeff(&vec![0; self.nvars]);
                    acc = acc.scale(&<Rat as Scalar>::one().divide(&c));
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<Rat>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let s = self.here();
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() && n >= <Rat as Scalar>::zero() && n <= <Rat as Scalar>::from_i64(64) => {
                    self.pos += 1;
                    let e: u32 = n.to_integer().try_into().unwrap();
                    return Ok(base.pow(e));
                }
                _ => return Err(err("exponent must be a non-negative integer ≤ 64", s, self.toks.get(self.pos).map(|l| l.end).unwrap_or(self.len))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<Rat>, ParseError> {
        let s = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, n))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Poly::var(self.nvars, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let parts = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err("unclosed parenthesis", s, self.here()));
                }
                self.pos += 1;
                Ok(parts.into_iter().fold(Poly::zero(self.nvars), |a, (p, _, _)| a.add(&p)))
            }
            Some(_) => Err(err("expected a number, variable or '('", s, self.toks[self.pos].end)),
            None => Err(err("unexpected end of input", self.len, self.len)),
        }
    }
}

/// Parses a homogeneous form in `x0..x{nvars-1}`. With `degree = Some(d)` every
/// top-level term must have degree d; otherwise all must agree with the first.
pub fn parse_form(src: &str, nvars: usize, degree: Option<u32>) -> Result<Form<Rat>, ParseError> {
    let toks = lex(src, nvars)?;
    if toks.is_empty() {
        return Err(err("empty polynomial", 0, src.len()));
    }
    let mut p = Parser { toks: &toks, pos: 0, nvars, len: src.len() };
    let parts = p.sum()?;
    if p.pos < toks.len() {
        let t = &toks[p.pos];
        return Err(err("unexpected token", t.start, t.end));
    }
    let mut expected = degree;
    let mut total = Poly::zero(nvars);
    for (poly, s, e) in parts {
        if poly.is_zero() {
            continue;
        }
        let text = src[s..e].trim();
        match poly.homogeneous_degree() {
            None => return Err(err(format!("term '{text}' is not homogeneous"), s, e)),
            Some(d) => match expected {
                Some(x) if x != d => {
                    return Err(err(format!("term '{text}' has degree {d}, expected {x}"), s, e));
                }
                _ => expected = Some(d),
            },
        }
        total = total.add(&poly);
    }
    if total.is_zero() {
        return Err(err("polynomial is identically zero", 0, src.len()));
    }
    let d = expected.unwrap();
    Form::new(total, d).map_err(|e| err(e.to_string(), 0, src.len()))
}
