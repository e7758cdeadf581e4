//! Polynomial text parser.
//!
//! ```text
//! expr    := [sign] term { sign term }
//! term    := factor { ["*"] factor }
//! factor  := atom [ "^" integer ]
//! atom    := integer [ "/" integer ] | identifier | "(" expr ")"
//! sign    := "+" | "-"
//! ```
//!
//! Juxtaposition is multiplication (`2x`, `x y`). A `/` is only legal between
//! two integer literals. The Unicode minus sign and `·` are accepted.

use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyRing, Polynomial};
use crate::error::{AlgebraError, ParseError};
use crate::field::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok((start, Tok::End));
        };
        let single = |tok| Ok((start, tok));
        self.pos += c.len_utf8();
        match c {
            '+' => single(Tok::Plus),
            '-' | '\u{2212}' => single(Tok::Minus),
            '*' | '\u{b7}' => single(Tok::Star),
            '/' => single(Tok::Slash),
            '^' => single(Tok::Caret),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            c if c.is_ascii_digit() => {
                let len = trimmed
                    .find(|ch: char| !ch.is_ascii_digit())
                    .unwrap_or(trimmed.len());
                self.pos = start + len;
                let n: BigInt = trimmed[..len].parse().expect("digits");
                Ok((start, Tok::Int(n)))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = trimmed
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(trimmed.len());
                self.pos = start + len;
                Ok((start, Tok::Ident(trimmed[..len].to_string())))
            }
            other => Err(ParseError::new(
                start,
                alloc::format!("unexpected character `{other}`"),
            )),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    ring: &'a Arc<PolyRing>,
}

type PResult<T> = Result<T, AlgebraError>;

impl<'a> Parser<'a> {
    fn bump(&mut self) -> PResult<()> {
        let (at, tok) = self.lexer.next()?;
        self.at = at;
        self.tok = tok;
        Ok(())
    }

    fn err(&self, msg: &str) -> AlgebraError {
        ParseError::new(self.at, msg).into()
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let mut neg = false;
        match self.tok {
            Tok::Plus => self.bump()?,
            Tok::Minus => {
                neg = true;
                self.bump()?
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.tok == Tok::Star {
                self.bump()?;
                if !self.starts_atom() {
                    return Err(self.err("expected a factor after `*`"));
                }
            } else if self.tok == Tok::Slash {
                return Err(self.err("division is only allowed inside a coefficient literal"));
            } else if !self.starts_atom() {
                return Ok(acc);
            }
            acc = &acc * &self.factor()?;
        }
    }

    fn factor(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Int(e) = &self.tok else {
            return Err(self.err("expected a nonnegative integer exponent"));
        };
        let e: u32 = e
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        self.bump()?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        match core::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.bump()?;
                let mut value = Scalar::from_integer(n);
                if self.tok == Tok::Slash {
                    self.bump()?;
                    let Tok::Int(d) = &self.tok else {
                        return Err(
                            self.err("division is only allowed inside a coefficient literal")
                        );
                    };
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value = Scalar::new(value.numer().clone(), d.clone());
                    self.bump()?;
                }
                let value = self.ring.field().try_embed(value)?;
                Ok(Polynomial::constant(self.ring, value))
            }
            Tok::Ident(name) => {
                let at = self.at;
                let i = self
                    .ring
                    .vars()
                    .index_of(&name)
                    .ok_or(AlgebraError::UnknownVariable { name, offset: at })?;
                self.bump()?;
                Ok(Polynomial::var(self.ring, i))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            Tok::Slash => Err(self.err("division is only allowed inside a coefficient literal")),
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

/// Parse `text` into a canonical polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, AlgebraError> {
    let mut p = Parser {
        lexer: Lexer { src: text, pos: 0 },
        tok: Tok::End,
        at: 0,
        ring,
    };
    p.bump()?;
    let out = p.expr()?;
    match p.tok {
        Tok::End => Ok(out),
        Tok::RParen => Err(p.err("unbalanced `)`")),
        _ => Err(p.err("unexpected token")),
    }
}
