//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := variable | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! variable := letter (letter|digit|'_')*
//! ```
//!
//! Whitespace is insignificant; implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else {
            return Err(Error::Syntax { position: pos, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: Option<&'a [String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        match self.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                self.err("implicit multiplication is not allowed; use `*`")
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = n.to_u32().ok_or(Error::Syntax { position: pos, message: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Syntax { position: pos, message: "expected an unsigned integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                if let Some(vars) = self.vars {
                    if !vars.iter().any(|v| v == &name) {
                        return Err(Error::UnknownVariable(name));
                    }
                }
                Ok(Polynomial::var(&name))
            }
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Polynomial::constant(Rational::new(n, d))),
                        Some(Tok::Int(_)) => Err(Error::Syntax { position: dpos, message: "division by zero".into() }),
                        _ => Err(Error::Syntax { position: dpos, message: "expected an unsigned integer denominator".into() }),
                    }
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.at -= 1;
                        self.err("expected `)`")
                    }
                }
            }
            Some(_) => Err(Error::Syntax { position: pos, message: "expected a variable, number or `(`".into() }),
            None => Err(Error::Syntax { position: pos, message: "unexpected end of input".into() }),
        }
    }
}

fn run(text: &str, vars: Option<&[String]>) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars };
    let poly = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parse against a declared variable list; other identifiers are rejected.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<Polynomial> {
    run(text, Some(variables))
}

/// Parse, accepting any identifier as a variable.
pub fn parse_polynomial_infer(text: &str) -> Result<Polynomial> {
    run(text, None)
}
