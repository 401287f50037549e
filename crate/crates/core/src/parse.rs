//! Text parsers for polynomials and generator words.
//!
//! Polynomial grammar (variables `h`, `hb`):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := rational | 'h' | 'hb' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::uea::GenSymbol;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Var(&'static str),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
}

fn err(src: &str, position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        input: src.to_string(),
        position,
        message: message.into(),
    }
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b' ' | b'\t' | b'\n' => i += 1,
                b'+' => lx.push(i, Tok::Plus, &mut i),
                b'-' => lx.push(i, Tok::Minus, &mut i),
                b'*' => lx.push(i, Tok::Star, &mut i),
                b'^' => lx.push(i, Tok::Caret, &mut i),
                b'(' => lx.push(i, Tok::LParen, &mut i),
                b')' => lx.push(i, Tok::RParen, &mut i),
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let num: BigInt = src[start..i].parse().expect("digits");
                    let mut den = BigInt::from(1);
                    if i < bytes.len() && bytes[i] == b'/' {
                        let slash = i;
                        i += 1;
                        let ds = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if ds == i {
                            return Err(err(src, slash, "expected denominator after '/'"));
                        }
                        den = src[ds..i].parse().expect("digits");
                        if den.is_zero() {
                            return Err(err(src, ds, "zero denominator"));
                        }
                    }
                    lx.toks.push((start, Tok::Num(BigRational::new(num, den))));
                }
                b'a'..=b'z' | b'A'..=b'Z' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let tok = match &src[start..i] {
                        "h" => Tok::Var("h"),
                        "hb" => Tok::Var("hb"),
                        other => {
                            return Err(err(src, start, format!("unknown symbol '{other}'")));
                        }
                    };
                    lx.toks.push((start, tok));
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(err(src, i, format!("unexpected character '{ch}'")));
                }
            }
        }
        Ok(lx.toks)
    }

    fn push(&mut self, pos: usize, t: Tok, i: &mut usize) {
        self.toks.push((pos, t));
        *i += 1;
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.0)
            .unwrap_or(self.src.len())
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.toks.get(self.pos).map(|t| t.1.clone()) {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(n.to_integer())
                        .map_err(|_| err(self.src, at, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(err(self.src, at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let at = self.here();
        let tok = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(BiPoly::constant(n)),
            Some(Tok::Var("h")) => Ok(BiPoly::h()),
            Some(Tok::Var(_)) => Ok(BiPoly::hb()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.src, self.here(), "expected ')'")),
                }
            }
            None => Err(err(self.src, at, "unexpected end of input")),
            Some(_) => Err(err(self.src, at, "expected a number, variable or '('")),
        }
    }
}

/// Parses a polynomial in `h` and `hb`.
pub fn parse_bipoly(src: &str) -> Result<BiPoly> {
    let toks = Lexer::run(src)?;
    if toks.is_empty() {
        return Err(err(src, 0, "empty polynomial"));
    }
    let mut p = Parser { src, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(src, p.here(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a word such as `e*f*hb`; the leftmost generator acts last.
pub fn parse_word(src: &str) -> Result<Vec<GenSymbol>> {
    let mut word = Vec::new();
    let mut offset = 0;
    for piece in src.split('*') {
        let lead = piece.len() - piece.trim_start().len();
        let name = piece.trim();
        let at = offset + lead;
        if name.is_empty() {
            return Err(err(src, at, "expected a generator name"));
        }
        let g = GenSymbol::from_name(name)
            .ok_or_else(|| err(src, at, format!("unknown generator '{name}'")))?;
        word.push(g);
        offset += piece.len() + 1;
    }
    Ok(word)
}
