//! Expression grammar for algebra elements and tensors:
//!
//! ```text
//! sum    := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | ident ['^' ['-'] int] | '(' sum ')'
//! tensor := ['+' | '-'] term '(x)' term (('+' | '-') term '(x)' term)*
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::integrable::NCLaurent;
use crate::ncalg::{AlgebraSignature, Letter, NCPoly, TensorPoly, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Tensor,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: l0, col: c0 });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '(' => {
                if chars[i..].starts_with(&['(', 'x', ')']) {
                    push(Tok::Tensor, 3, &mut i, &mut col)
                } else {
                    push(Tok::LParen, 1, &mut i, &mut col)
                }
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                // a fraction bar binds only digit runs
                if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let s: String = chars[i..j].iter().collect();
                push(Tok::Num(s), j - i, &mut i, &mut col)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                push(Tok::Ident(s), j - i, &mut i, &mut col)
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Arc<AlgebraSignature>,
    spectral: Option<&'a str>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(src: &str, sig: &'a Arc<AlgebraSignature>, spectral: Option<&'a str>) -> Result<Self> {
        let toks = lex(src)?;
        let line = src.lines().count().max(1);
        let col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Ok(Self {
            toks,
            pos: 0,
            sig,
            spectral,
            end: (line, col),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col));
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                Some(false)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<NCLaurent> {
        let mut acc = NCLaurent::zero(self.sig);
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            acc = acc.checked_add(&if neg { t.neg() } else { t })?;
            match self.sign() {
                Some(n) => neg = n,
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCLaurent> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        match self.peek() {
            Some(Tok::Num(s)) if !s.contains('/') => {
                let e: i64 = match s.parse() {
                    Ok(e) => e,
                    Err(_) => return self.err("exponent out of range"),
                };
                self.pos += 1;
                Ok(if neg { -e } else { e })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn factor(&mut self) -> Result<NCLaurent> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let c: Rat = match s.parse() {
                    Ok(c) => c,
                    Err(_) => {
                        self.pos -= 1;
                        return self.err(format!("invalid rational `{s}`"));
                    }
                };
                Ok(NCLaurent::constant(NCPoly::term(self.sig, Word::one(), c)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let e = self.exponent()?;
                if self.spectral == Some(name.as_str()) {
                    return Ok(NCLaurent::monomial(NCPoly::one(self.sig), e));
                }
                let g = self.sig.index_of(&name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                if e < 0 && !self.sig.is_invertible(g) {
                    return Err(Error::NonInvertibleInverse(name));
                }
                let l = Letter::new(g, e < 0);
                let w = Word::reduce(std::iter::repeat_n(l, e.unsigned_abs() as usize));
                Ok(NCLaurent::constant(NCPoly::word(self.sig, w)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let s = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                let e = self.exponent()?;
                if e < 0 {
                    return self.err("negative powers of parenthesized expressions are not supported");
                }
                let mut acc = NCLaurent::constant(NCPoly::one(self.sig));
                for _ in 0..e {
                    acc = acc.checked_mul(&s)?;
                }
                Ok(acc)
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }

    fn plain(&self, l: NCLaurent) -> Result<NCPoly> {
        match l.max_exponent() {
            None => Ok(NCPoly::zero(self.sig)),
            Some(0) if l.min_exponent() == Some(0) => Ok(l.coeff(0)),
            _ => Err(Error::Invalid("spectral parameter not allowed here".into())),
        }
    }

    fn tensor(&mut self) -> Result<TensorPoly> {
        let mut acc = TensorPoly::zero(self.sig);
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let l = self.term()?;
            let l = self.plain(l)?;
            self.expect(Tok::Tensor, "`(x)`")?;
            let r = self.term()?;
            let r = self.plain(r)?;
            let t = TensorPoly::tensor(&if neg { l.neg() } else { l }, &r)?;
            acc = acc.checked_add(&t)?;
            match self.sign() {
                Some(n) => neg = n,
                None => return Ok(acc),
            }
        }
    }
}

/// Which grammar [`parse_expression`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Element,
    Tensor,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Element(NCPoly),
    Tensor(TensorPoly),
}

pub fn parse_expression(src: &str, sig: &Arc<AlgebraSignature>, kind: ExprKind) -> Result<Parsed> {
    Ok(match kind {
        ExprKind::Element => Parsed::Element(parse_element(src, sig)?),
        ExprKind::Tensor => Parsed::Tensor(parse_tensor(src, sig)?),
    })
}

pub fn parse_element(src: &str, sig: &Arc<AlgebraSignature>) -> Result<NCPoly> {
    let mut p = Parser::new(src, sig, None)?;
    let s = p.sum()?;
    p.finish()?;
    p.plain(s)
}

pub fn parse_tensor(src: &str, sig: &Arc<AlgebraSignature>) -> Result<TensorPoly> {
    let mut p = Parser::new(src, sig, None)?;
    let t = p.tensor()?;
    p.finish()?;
    Ok(t)
}

/// An element with a commuting spectral parameter named `spectral`.
pub fn parse_laurent(src: &str, sig: &Arc<AlgebraSignature>, spectral: &str) -> Result<NCLaurent> {
    if sig.index_of(spectral).is_some() {
        return Err(Error::Invalid(format!("spectral parameter `{spectral}` clashes with a generator")));
    }
    let mut p = Parser::new(src, sig, Some(spectral))?;
    let s = p.sum()?;
    p.finish()?;
    Ok(s)
}
