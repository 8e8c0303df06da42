//! Polynomial text syntax: `2*x^2 + x*y - 3y^2`, `(x+y)^3`, `x0*x3`.
//!
//! `*` is optional, whitespace is ignored, variables are the ring's alias
//! names or `x0..x9`.

use crate::error::{Error, Result};
use crate::poly::monomial::Monomial;
use crate::poly::polynomial::Polynomial;
use crate::poly::ring::GradedRing;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn resolve_name(name: &str, names: &[String], nvars: usize) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == name) {
        return Some(i);
    }
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (i < nvars).then_some(i)
}

/// Splits an unknown identifier like `xyz` into known variable names,
/// longest name first.
fn split_name(word: &str, names: &[String], nvars: usize) -> Option<Vec<usize>> {
    if word.is_empty() {
        return Some(Vec::new());
    }
    for len in (1..=word.len()).rev() {
        if !word.is_char_boundary(len) {
            continue;
        }
        if let Some(v) = resolve_name(&word[..len], names, nvars) {
            if let Some(mut rest) = split_name(&word[len..], names, nvars) {
                rest.insert(0, v);
                return Some(rest);
            }
        }
    }
    None
}

fn lex(text: &str, names: &[String], nvars: usize, line: usize, col0: usize) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |at: usize, msg: String| Error::Parse {
        line,
        col: col0 + at,
        msg,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, start)),
            '-' => toks.push((Tok::Minus, start)),
            '*' => toks.push((Tok::Star, start)),
            '^' => toks.push((Tok::Caret, start)),
            '(' => toks.push((Tok::LParen, start)),
            ')' => toks.push((Tok::RParen, start)),
            d if d.is_ascii_digit() => {
                let mut raw: u64 = 0;
                let mut overflow = false;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let digit = chars[i] as u64 - '0' as u64;
                    match raw.checked_mul(10).and_then(|r| r.checked_add(digit)) {
                        Some(r) => raw = r,
                        None => overflow = true,
                    }
                    i += 1;
                }
                toks.push((Tok::Num(if overflow { u64::MAX } else { raw }), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let vars = resolve_name(&word, names, nvars)
                    .map(|v| vec![v])
                    .or_else(|| split_name(&word, names, nvars))
                    .ok_or_else(|| err(start, format!("unknown variable `{word}`")))?;
                for (k, v) in vars.into_iter().enumerate() {
                    if k > 0 {
                        toks.push((Tok::Star, start));
                    }
                    toks.push((Tok::Var(v), start));
                }
                continue;
            }
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(Lexed {
        toks,
        end_col: chars.len(),
    })
}

struct Parser<'a> {
    ring: GradedRing,
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    col0: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.col0 + self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            col: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
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
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Num(e)) => {
                    if e > u16::MAX as u64 {
                        return self.fail("exponent too large");
                    }
                    self.pos += 1;
                    return Ok(base.pow(e as u32));
                }
                _ => return self.fail("expected an exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let p = self.ring.p() as u64;
                if v == u64::MAX {
                    return self.fail("numeric literal too large");
                }
                let c = (v % p) as u32;
                Ok(Polynomial::term(
                    self.ring,
                    Monomial::one(self.ring.nvars()),
                    c,
                ))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.fail("expected a number, variable or `(`"),
            None => self.fail("unexpected end of expression"),
        }
    }
}

/// Parses a polynomial; errors report line 1 and a 1-based column.
pub fn parse_polynomial(ring: GradedRing, names: &[String], text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, names, text, 1, 1)
}

/// Like [`parse_polynomial`] with the text located at `line`, starting column
/// `col0`, for diagnostics inside larger files.
pub fn parse_polynomial_at(
    ring: GradedRing,
    names: &[String],
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Polynomial> {
    let lexed = lex(text, names, ring.nvars(), line, col0)?;
    let mut parser = Parser {
        ring,
        toks: &lexed.toks,
        pos: 0,
        line,
        col0,
        end_col: lexed.end_col,
    };
    if lexed.toks.is_empty() {
        return parser.fail("empty expression");
    }
    let poly = parser.expr()?;
    if parser.pos != lexed.toks.len() {
        return parser.fail("unexpected token");
    }
    Ok(poly)
}
